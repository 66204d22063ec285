//! Certified estimate of a fixed set's weighted coverage.
//!
//! Samples are scored at the checkpoints `ceil(1.1^t)`. Checkpoint `j` gets
//! failure probability `delta / 2 / ((j + 1)(j + 2))` on each side, so the
//! whole sequence of intervals holds simultaneously with probability
//! `1 - delta` and the running intersection of them is reported.

use crate::bounds::{f_lower, f_upper, DEFAULT_BETA};
use crate::error::{Error, Result};
use crate::oracles::SampleStream;
use crate::NodeId;

/// Below this lower bound the relative stopping rule uses it as the scale.
pub const RELATIVE_FLOOR: f64 = 1e-6;

/// Point estimate and confidence interval for the coverage of a set.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageEstimate {
    pub mean: f64,
    pub lb: f64,
    pub ub: f64,
    /// Samples scored, always a checkpoint.
    pub samples: u64,
    pub epsilon: f64,
    pub delta: f64,
    /// Whether the interval reached the requested relative width.
    pub precise: bool,
}

/// Scores `set` on fresh samples until `ub - lb <= 2 * epsilon * max(lb,
/// RELATIVE_FLOOR)` or the next checkpoint would exceed `max_samples`.
pub fn estimate_coverage(
    stream: &mut SampleStream<'_>,
    set: &[NodeId],
    epsilon: f64,
    delta: f64,
    max_samples: u64,
) -> Result<CoverageEstimate> {
    if set.is_empty() {
        return Err(Error::invalid("the set to evaluate is empty"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!(
            "epsilon and delta must lie in (0, 1), got {epsilon} and {delta}"
        )));
    }
    if max_samples == 0 {
        return Err(Error::invalid("max_samples must be positive"));
    }
    let n = stream.num_nodes();
    let mut member = vec![false; n];
    for &v in set {
        if v as usize >= n {
            return Err(Error::UnknownNode(v as u64));
        }
        member[v as usize] = true;
    }

    let mut checkpoints = crate::algo::Checkpoints::new(DEFAULT_BETA);
    let (mut lb, mut ub) = (0.0f64, 1.0f64);
    let (mut drawn, mut hits) = (0u64, 0u64);
    let mut scored = (0u64, 0u64);
    let mut j = 0u32;
    let mut precise = false;
    while checkpoints.next() <= max_samples {
        let target = checkpoints.next();
        while drawn < target {
            if stream.next_edge().iter().any(|&v| member[v as usize]) {
                hits += 1;
            }
            drawn += 1;
        }
        checkpoints.advance();
        let share = delta / 2.0 / ((j as f64 + 1.0) * (j as f64 + 2.0));
        j += 1;
        let mu = hits as f64 / drawn as f64;
        lb = lb.max(f_lower(drawn, mu, share, drawn));
        ub = ub.min(f_upper(drawn, mu, share, drawn));
        scored = (drawn, hits);
        if ub - lb <= 2.0 * epsilon * lb.max(RELATIVE_FLOOR) {
            precise = true;
            break;
        }
    }
    let (samples, hits) = scored;
    let mean = if samples == 0 {
        0.0
    } else {
        hits as f64 / samples as f64
    };
    Ok(CoverageEstimate {
        mean: mean.clamp(lb, ub),
        lb,
        ub,
        samples,
        epsilon,
        delta,
        precise,
    })
}
