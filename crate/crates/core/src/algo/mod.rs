//! Threshold-driven greedy selection over a sample stream, its adaptive
//! driver, the cost-budgeted variant, and the full-sketch baselines used for
//! comparison and testing.

mod bca;
mod budgeted;
mod dta;
mod exact;
mod greedy;
mod reference;
mod state;

use std::time::Duration;

pub use bca::{bca, bca_fixed_guarantee, bca_observed, BcaConfig};
pub use budgeted::{
    budgeted_bca, budgeted_bca_observed, budgeted_dta, BudgetSpec, BudgetedRun, BUDGETED_FACTOR,
};
pub(crate) use dta::Checkpoints;
pub use dta::{dta, DtaConfig, RoundSummary};
pub use exact::{brute_force_budgeted, brute_force_opt, coverage_of, SEARCH_LIMIT};
pub use greedy::full_sketch_greedy;
pub use reference::bca_full_sketch;
pub use state::{Event, NoObserver, Observer, SolutionState, View};

use crate::bounds::QualityBound;
use crate::NodeId;

/// Default cap on the number of samples one run may draw.
pub const DEFAULT_MAX_SAMPLES: u64 = 1_000_000_000;

/// Outcome of a completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Selected nodes in selection order.
    pub solution: Vec<NodeId>,
    /// Hyperedges of the run's own sample window that the solution covers.
    pub covered: u64,
    /// Size of that sample window.
    pub samples: u64,
    /// Samples drawn from the stream in total, across every inner run.
    pub total_samples: u64,
    /// Threshold of the run that produced the solution.
    pub z_used: u64,
    /// Largest number of node occurrences held in the reduced sketch.
    pub peak_sketch_elements: u64,
    /// Largest hyperdegree seen in the reduced sketch.
    pub peak_max_degree: u32,
    pub wall_time: Duration,
    /// Present exactly when the adaptive driver stopped on a certified ratio.
    pub certificate: Option<QualityBound>,
    /// One entry per threshold the adaptive driver visited.
    pub rounds: Vec<RoundSummary>,
}

impl RunResult {
    pub fn peak_sketch_bytes(&self) -> u64 {
        self.peak_sketch_elements * crate::sketch::BYTES_PER_ELEMENT
    }

    /// `covered / samples`, the empirical coverage on the run's own window.
    pub fn coverage_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.covered as f64 / self.samples as f64
        }
    }
}
