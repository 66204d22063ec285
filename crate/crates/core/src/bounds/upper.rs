//! Upper bounds on the best coverage of any `k` nodes over every hyperedge
//! generated so far, computed from the reduced sketch alone.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Which upper-bound function drives the threshold test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UpperBound {
    /// `d_S + k * max degree`.
    #[default]
    Requirement,
    /// `d_S + sum of the k largest degrees`.
    TopK,
    /// Relaxed dual with two free variables.
    Df2d,
}

impl UpperBound {
    pub const ALL: [UpperBound; 3] = [UpperBound::Requirement, UpperBound::TopK, UpperBound::Df2d];

    pub fn as_str(self) -> &'static str {
        match self {
            UpperBound::Requirement => "req",
            UpperBound::TopK => "topk",
            UpperBound::Df2d => "df2d",
        }
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UpperBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "req" | "requirement" => Ok(UpperBound::Requirement),
            "topk" | "top-k" => Ok(UpperBound::TopK),
            "df2d" | "df-2d" => Ok(UpperBound::Df2d),
            other => Err(Error::invalid(format!("unknown bound function '{other}'"))),
        }
    }
}

pub fn f_requirement(covered: u64, k: usize, max_degree: u32) -> u64 {
    covered + k as u64 * max_degree as u64
}

pub fn f_topk(covered: u64, topk_sum: u64) -> u64 {
    covered + topk_sum
}

const GOLDEN_ITERATIONS: usize = 64;

/// Dual objective `k * max_i(D_i - alpha * S_i) + alpha * d_S` at a fixed
/// `alpha`, where `D_i = deg_r[i] + covered_count[i]` is the full degree of
/// node `i` and `S_i = covered_count[i]`.
pub fn df2d_at(alpha: f64, covered: u64, k: usize, deg_r: &[u32], covered_count: &[u32]) -> f64 {
    let beta = 1.0 - alpha;
    let worst = deg_r
        .iter()
        .zip(covered_count)
        .map(|(&r, &c)| r as f64 + beta * c as f64)
        .fold(0.0, f64::max);
    k as f64 * worst + alpha * covered as f64
}

/// Minimum of the relaxed dual over `alpha` in `[0, 1]`.
///
/// The objective is convex and piecewise linear in `alpha`. Golden-section
/// search runs over the Pareto frontier of `(deg_r, covered_count)` pairs,
/// since dominated nodes never attain the inner maximum. Every evaluated
/// `alpha` is dual feasible, so the result is a valid bound even if the
/// search stops short of the true minimum, and it never exceeds the value at
/// `alpha = 1`, which is the requirement function.
pub fn f_df2d(covered: u64, k: usize, deg_r: &[u32], covered_count: &[u32]) -> f64 {
    debug_assert_eq!(deg_r.len(), covered_count.len());
    let frontier = pareto_frontier(deg_r, covered_count);
    let k = k as f64;
    let d_s = covered as f64;
    let g = |alpha: f64| {
        let beta = 1.0 - alpha;
        let worst = frontier
            .iter()
            .map(|&(r, c)| r + beta * c)
            .fold(0.0, f64::max);
        k * worst + alpha * d_s
    };

    let mut best = g(0.0).min(g(1.0));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..GOLDEN_ITERATIONS {
        best = best.min(g1).min(g2);
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        }
    }
    best.min(g1).min(g2)
}

fn pareto_frontier(deg_r: &[u32], covered_count: &[u32]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(u32, u32)> = deg_r
        .iter()
        .zip(covered_count)
        .filter(|&(&r, &c)| r > 0 || c > 0)
        .map(|(&r, &c)| (r, c))
        .collect();
    // Descending by degree, then by covered count; keep strictly rising
    // covered counts.
    pts.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut best_c = None;
    for (r, c) in pts {
        if best_c.is_none_or(|b| c > b) {
            out.push((r as f64, c as f64));
            best_c = Some(c);
        }
    }
    out
}
