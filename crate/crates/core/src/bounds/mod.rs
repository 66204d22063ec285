//! Upper bounds on the running optimum, anytime confidence bounds and the
//! constants behind the approximation guarantees.

mod confidence;
mod params;
mod upper;

pub use confidence::{f_lower, f_upper, required_samples};
pub use params::{
    ln_choose, meets_prefix_factor, rho, GuaranteeParams, DEFAULT_ALPHA, DEFAULT_BETA,
    ONE_MINUS_INV_E,
};
pub use upper::{df2d_at, f_df2d, f_requirement, f_topk, UpperBound};

/// Certified quality of a candidate: a lower bound on its weighted coverage
/// against an upper bound on the optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityBound {
    pub lb: f64,
    pub ub: f64,
}

impl QualityBound {
    pub fn ratio(&self) -> f64 {
        if self.ub > 0.0 {
            self.lb / self.ub
        } else {
            0.0
        }
    }
}
