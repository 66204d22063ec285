//! Anytime confidence bounds for the mean of a Bernoulli stream.
//!
//! Both bounds invert a Freedman-type maximal inequality: with probability
//! `1 - delta`, for every prefix `i <= horizon`,
//!
//! ```text
//! |mu_hat_i - mu| <= c_i (1 - mu) / 3 + sqrt(c_i^2 (1 - mu)^2 / 9 + 2 c_i mu (1 - mu) / a)
//! ```
//!
//! with `c_i = ln(1/delta) / i` and `a = i / horizon`. Each side splits into a
//! linear case and a quadratic case; the bound takes the weaker of the two.

use crate::error::{Error, Result};

fn check_args(i: u64, mu_hat: f64, delta: f64, horizon: u64) {
    debug_assert!(i >= 1 && i <= horizon, "need 1 <= i <= horizon");
    debug_assert!(
        (0.0..=1.0).contains(&mu_hat),
        "mu_hat out of range: {mu_hat}"
    );
    debug_assert!(delta > 0.0 && delta < 1.0, "delta out of range: {delta}");
}

/// Lower confidence bound on the mean after `i` of `horizon` draws.
pub fn f_lower(i: u64, mu_hat: f64, delta: f64, horizon: u64) -> f64 {
    check_args(i, mu_hat, delta, horizon);
    let m = mu_hat.clamp(0.0, 1.0);
    let c = (1.0 / delta).ln() / i as f64;
    let a = i as f64 / horizon as f64;

    let disc = c * c * (3.0 + a * (m - 1.0)).powi(2) + 18.0 * a * c * (1.0 - m) * m;
    let quadratic =
        (3.0 * c + 3.0 * a * m - a * c * (m + 1.0) - disc.sqrt()) / (c * (6.0 - 2.0 * a) + 3.0 * a);
    // The linear case degenerates once c >= 3.
    let value = if c < 3.0 {
        let linear = m + (m - 1.0) * c / (3.0 - c);
        linear.min(quadratic)
    } else {
        quadratic
    };
    value.clamp(0.0, 1.0)
}

/// Upper confidence bound on the mean after `i` of `horizon` draws.
pub fn f_upper(i: u64, mu_hat: f64, delta: f64, horizon: u64) -> f64 {
    check_args(i, mu_hat.min(1.0), delta, horizon);
    let m = mu_hat.clamp(0.0, 1.0);
    let c = (1.0 / delta).ln() / i as f64;
    let a = i as f64 / horizon as f64;

    let linear = m + (1.0 - m) * c / (3.0 + c);
    let disc = c * c * (3.0 + a * (1.0 - m)).powi(2) + 18.0 * a * c * (1.0 - m) * m;
    let quadratic =
        (3.0 * c + 3.0 * a * m + a * c * (1.0 + m) + disc.sqrt()) / (c * (6.0 + 2.0 * a) + 3.0 * a);
    linear.max(quadratic).clamp(0.0, 1.0)
}

/// Draws needed so that the running sum stays within `eps * mu * N` of its
/// mean with probability `1 - delta`, given a mean of at least `mu`.
pub fn required_samples(eps: f64, delta: f64, mu: f64) -> Result<u64> {
    if mu <= 0.0 {
        return Err(Error::NonPositiveMeanFloor);
    }
    if !(eps > 0.0) || !(delta > 0.0 && delta < 1.0) || mu > 1.0 {
        return Err(Error::invalid(format!(
            "required_samples needs eps > 0, delta in (0,1), mu in (0,1]; got {eps}, {delta}, {mu}"
        )));
    }
    let n = 2.0 * (1.0 + 1.0 / 3.0) * (2.0 / delta).ln() / (mu * eps * eps);
    Ok(n.ceil() as u64)
}
