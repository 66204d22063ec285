use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// `1 - 1/e`.
pub const ONE_MINUS_INV_E: f64 = 1.0 - 1.0 / std::f64::consts::E;

/// Default width of the geometric grid on the sample count.
pub const DEFAULT_ALPHA: f64 = 0.1;
/// Default growth factor of the assessment checkpoints.
pub const DEFAULT_BETA: f64 = 0.1;

const FIXED_POINT_TOL: f64 = 1e-12;
const FIXED_POINT_MAX_ITER: usize = 200;

/// `1 - (1 - 1/k)^k`, the coverage factor of one greedy pass against a
/// threshold.
pub fn rho(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    1.0 - (1.0 - 1.0 / k as f64).powi(k as i32)
}

/// Exact check of `covered >= (1 - (1 - 1/k)^steps) * z`, i.e.
/// `covered * k^steps >= (k^steps - (k-1)^steps) * z`. Falls back to floating
/// point when the powers overflow.
pub fn meets_prefix_factor(covered: u64, z: u64, k: usize, steps: usize) -> bool {
    let k = k as u128;
    let pow = |b: u128| -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..steps {
            acc = acc.checked_mul(b)?;
        }
        Some(acc)
    };
    if let (Some(kp), Some(km)) = (pow(k), pow(k.saturating_sub(1))) {
        if let (Some(lhs), Some(rhs)) = (
            (covered as u128).checked_mul(kp),
            (kp - km).checked_mul(z as u128),
        ) {
            return lhs >= rhs;
        }
    }
    let factor = 1.0 - (1.0 - 1.0 / k as f64).powi(steps as i32);
    covered as f64 >= factor * z as f64
}

/// `ln C(n, k)`.
pub fn ln_choose(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Every constant the fixed-threshold and adaptive algorithms derive from
/// `(n, k, epsilon, delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GuaranteeParams {
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon2: f64,
    pub c_const: f64,
    pub p_const: f64,
    /// Unrounded threshold.
    pub z_star_raw: f64,
    pub z_star: u64,
    /// Sample count estimate at the smallest admissible optimum, `k / n`.
    pub t_star_floor: f64,
    pub i0: u32,
    pub delta_prime: f64,
    pub rho_k: f64,
    /// `|epsilon2 - F(epsilon2)|` at the returned iterate.
    pub fixed_point_residual: f64,
}

impl GuaranteeParams {
    /// Requires `1 <= k < n`, `0 < epsilon < 1 - 1/e` and `0 < delta < 1`.
    pub fn derive(n: usize, k: usize, epsilon: f64, delta: f64) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::invalid(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        Self::derive_with(n, k, epsilon, delta, DEFAULT_ALPHA, DEFAULT_BETA)
    }

    pub fn derive_with(
        n: usize,
        k: usize,
        epsilon: f64,
        delta: f64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::invalid(format!(
                "need 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        if !(epsilon > 0.0 && epsilon < ONE_MINUS_INV_E) {
            return Err(Error::invalid(format!(
                "epsilon must lie in (0, 1 - 1/e), got {epsilon}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid(format!(
                "delta must lie in (0, 1), got {delta}"
            )));
        }
        if !(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0) {
            return Err(Error::invalid(
                "alpha must lie in (0, 1) and beta be positive",
            ));
        }

        let log_choose = ln_choose(n, k);
        let (epsilon2, c_const, p_const, residual) =
            solve_epsilon2(epsilon, delta, alpha, log_choose);

        let z_star_raw = (1.0 + epsilon2) / ONE_MINUS_INV_E
            * (2.0 + 2.0 / 3.0 * epsilon2 * (1.0 - alpha))
            / (epsilon2 * epsilon2)
            * (p_const.ln() + log_choose);
        let z_star = (z_star_raw.ceil() as u64).max(1);

        let mut params = GuaranteeParams {
            n,
            k,
            epsilon,
            delta,
            alpha,
            beta,
            epsilon2,
            c_const,
            p_const,
            z_star_raw,
            z_star,
            t_star_floor: 0.0,
            i0: 0,
            delta_prime: 0.0,
            rho_k: rho(k),
            fixed_point_residual: residual,
        };
        params.t_star_floor = params.t_star(k as f64 / n as f64);

        let first =
            z_star as f64 * epsilon * epsilon / ((2.0 + 2.0 / 3.0 * epsilon) * (1.0 / delta).ln());
        params.i0 = first.log2().ceil().max(0.0) as u32;

        // Both logarithms are floored at one so tiny instances still get a
        // finite, no-larger-than-delta split.
        let log_z = (z_star as f64).log2().max(1.0);
        let log_t = ((c_const * params.t_star_floor).ln() / (1.0 + beta).ln()).max(1.0);
        params.delta_prime = delta / (2.0 * log_z * log_t);
        Ok(params)
    }

    /// Sample count at which the threshold is expected to be reached when
    /// the optimum has weighted coverage `opt`.
    pub fn t_star(&self, opt: f64) -> f64 {
        self.z_star as f64 * ONE_MINUS_INV_E * (1.0 + self.alpha).powi(2)
            / (1.0 + self.epsilon2)
            / opt
    }

    /// Thresholds `ceil(z*/2^i0), ceil(z*/2^(i0-1)), ..., z*`, deduplicated.
    pub fn threshold_grid(&self) -> Vec<u64> {
        let mut grid: Vec<u64> = (0..=self.i0)
            .rev()
            .map(|i| {
                let d = 2f64.powi(i as i32);
                ((self.z_star as f64 / d).ceil() as u64).max(1)
            })
            .collect();
        grid.dedup();
        if grid.last() != Some(&self.z_star) {
            grid.push(self.z_star);
        }
        grid
    }
}

/// Iterates `epsilon2 -> (c, p) -> epsilon2` to a fixed point. `p` depends
/// on `epsilon2` only through an integer ceiling, so the map either settles
/// exactly or flips between two neighbouring integers; in the latter case the
/// larger `p` (smaller `epsilon2`, larger threshold) is kept.
fn solve_epsilon2(epsilon: f64, delta: f64, alpha: f64, log_choose: f64) -> (f64, f64, f64, f64) {
    let c_of = |e2: f64| (1.0 + e2) / ((1.0 - e2) * ONE_MINUS_INV_E);
    let p_of = |c: f64| {
        let steps = (c.ln() / (1.0 + alpha).ln()).ceil().max(0.0);
        4.0 * (1.0 + steps) / delta
    };
    let eps2_of = |p: f64| {
        let lp = p.ln();
        let whole = (lp + log_choose).sqrt();
        whole / (ONE_MINUS_INV_E * lp.sqrt() + whole) * epsilon / (1.0 + alpha)
    };

    let mut e2 = epsilon / (1.0 + alpha);
    let mut history: Vec<(f64, f64)> = Vec::new();
    for _ in 0..FIXED_POINT_MAX_ITER {
        let p = p_of(c_of(e2));
        let next = eps2_of(p);
        let residual = (next - e2).abs();
        history.push((next, p));
        e2 = next;
        if residual < FIXED_POINT_TOL {
            return (e2, c_of(e2), p, residual);
        }
    }
    let tail = &history[history.len().saturating_sub(2)..];
    let &(e2, p) = tail
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one iterate");
    let residual = (eps2_of(p_of(c_of(e2))) - e2).abs();
    (e2, c_of(e2), p, residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(rho(1), 1.0);
        assert_eq!(rho(2), 0.75);
        for k in 1..200 {
            let r = rho(k);
            assert!(r >= ONE_MINUS_INV_E - 1e-12);
            assert!(r >= 0.5);
        }
    }

    #[test]
    fn exact_prefix_factor() {
        // k = 2: factor 3/4, so 3 of 4 passes and 2 of 3 fails (2 < 2.25)
        assert!(meets_prefix_factor(3, 4, 2, 2));
        assert!(!meets_prefix_factor(2, 3, 2, 2));
        // one step of k = 3 needs a third of z
        assert!(meets_prefix_factor(1, 3, 3, 1));
        assert!(!meets_prefix_factor(1, 4, 3, 1));
    }

    #[test]
    fn ln_choose_matches_product() {
        let direct: f64 = (1..=5)
            .map(|i| ((100 - 5 + i) as f64 / i as f64).ln())
            .sum();
        assert!((ln_choose(100, 5) - direct).abs() < 1e-9);
        assert_eq!(ln_choose(7, 0), 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(GuaranteeParams::derive(10, 0, 0.1, 0.1).is_err());
        assert!(GuaranteeParams::derive(10, 10, 0.1, 0.1).is_err());
        assert!(GuaranteeParams::derive(10, 2, 0.7, 0.1).is_err());
        assert!(GuaranteeParams::derive(10, 2, 0.1, 1.0).is_err());
        assert!(GuaranteeParams::derive(10, 9, 0.1, 0.1).is_ok());
    }

    #[test]
    fn derived_constants_are_consistent() {
        let p = GuaranteeParams::derive(100, 5, 0.2, 0.1).unwrap();
        assert!(p.epsilon2 > 0.0 && p.epsilon2 < p.epsilon / (1.0 + p.alpha));
        assert!(p.c_const > 1.0);
        assert!(p.z_star >= 1);
        assert!(p.fixed_point_residual < 1e-9);
        assert!(p.delta_prime > 0.0 && p.delta_prime < p.delta);
        let grid = p.threshold_grid();
        assert_eq!(*grid.last().unwrap(), p.z_star);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(GuaranteeParams::derive(100, 5, 0.2, 0.1).unwrap(), p);
    }
}
