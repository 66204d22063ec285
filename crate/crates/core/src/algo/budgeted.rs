use std::time::Instant;

use super::bca::cap_error;
use super::dta::{adaptive, inner_delta, ThresholdRunner};
use super::state::{Event, NoObserver, Observer, SolutionState, View};
use super::RunResult;
use crate::bounds::{GuaranteeParams, DEFAULT_ALPHA, DEFAULT_BETA};
use crate::error::{Error, Result};
use crate::oracles::SampleStream;
use crate::sketch::ReducedSketch;
use crate::NodeId;

/// `1 - e^{-1/2}`, the approximation factor of the cost-budgeted variant.
pub const BUDGETED_FACTOR: f64 = 0.393_469_340_287_366_6;

const COST_SLACK: f64 = 1e-12;

/// Node costs and a total budget. Nodes costing more than the budget can
/// never be selected and are ignored throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetSpec {
    costs: Vec<f64>,
    budget: f64,
    k_m: usize,
}

impl BudgetSpec {
    pub fn new(costs: Vec<f64>, budget: f64) -> Result<Self> {
        if !(budget.is_finite() && budget > 0.0) {
            return Err(Error::invalid(format!(
                "budget must be positive, got {budget}"
            )));
        }
        if let Some((v, c)) = costs
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.is_finite() && **c > 0.0))
        {
            return Err(Error::invalid(format!(
                "cost of node {v} must be positive, got {c}"
            )));
        }
        let mut affordable: Vec<f64> = costs.iter().copied().filter(|&c| c <= budget).collect();
        affordable.sort_unstable_by(f64::total_cmp);
        let mut spent = 0.0;
        let mut k_m = 0;
        for c in affordable {
            if spent + c > budget * (1.0 + COST_SLACK) {
                break;
            }
            spent += c;
            k_m += 1;
        }
        if k_m == 0 {
            return Err(Error::invalid("no node fits in the budget"));
        }
        Ok(BudgetSpec { costs, budget, k_m })
    }

    /// Unit costs with budget `k`: the plain cardinality constraint.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Self::new(vec![1.0; n], k as f64)
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// Size of the largest affordable node set.
    pub fn k_m(&self) -> usize {
        self.k_m
    }

    pub fn cost(&self, v: NodeId) -> f64 {
        self.costs[v as usize]
    }

    pub fn eligible(&self, v: NodeId) -> bool {
        self.costs[v as usize] <= self.budget
    }

    pub fn cost_of(&self, set: &[NodeId]) -> f64 {
        set.iter().map(|&v| self.cost(v)).sum()
    }

    fn fits(&self, spent: f64, v: NodeId) -> bool {
        spent + self.cost(v) <= self.budget * (1.0 + COST_SLACK)
    }
}

/// Result of one budgeted run.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetedRun {
    /// The returned solution: the greedy set, or the single best node when
    /// that covers more.
    pub result: RunResult,
    /// Nodes the ratio greedy selected, in order.
    pub greedy_order: Vec<NodeId>,
    pub greedy_covered: u64,
    /// Whether the single best node replaced the greedy set.
    pub used_single: bool,
    pub cost: f64,
}

/// Largest coverage-to-cost ratio in the reduced sketch over candidates
/// outside the solution and the skip set, ties to the smallest id.
struct RatioMax {
    node: Option<NodeId>,
    ratio: f64,
}

impl RatioMax {
    fn offer(&mut self, v: NodeId, ratio: f64) {
        let better = match self.node {
            None => true,
            Some(u) => ratio > self.ratio || (ratio == self.ratio && v < u),
        };
        if better {
            self.node = Some(v);
            self.ratio = ratio;
        }
    }

    fn rescan(&mut self, spec: &BudgetSpec, sketch: &ReducedSketch, blocked: &[bool]) {
        self.node = None;
        self.ratio = 0.0;
        for v in 0..blocked.len() as NodeId {
            if !blocked[v as usize] {
                self.offer(v, sketch.degree(v) as f64 / spec.cost(v));
            }
        }
    }
}

/// Threshold run for the cost-budgeted problem with threshold `z`.
pub fn budgeted_bca(
    stream: &mut SampleStream<'_>,
    spec: &BudgetSpec,
    z: u64,
    max_samples: u64,
) -> Result<BudgetedRun> {
    Ok(
        budgeted_bca_observed(stream, spec, z, max_samples, &mut NoObserver)?
            .expect("observer never interrupts"),
    )
}

/// [`budgeted_bca`] with every event reported to `observer`.
///
/// Sampling continues while `d_S + L * (best ratio)` stays below `z`. Then
/// the best-ratio candidate joins the solution if it fits the leftover
/// budget and is set aside for good otherwise. The run ends when no
/// candidate fits.
pub fn budgeted_bca_observed(
    stream: &mut SampleStream<'_>,
    spec: &BudgetSpec,
    z: u64,
    max_samples: u64,
    observer: &mut dyn Observer,
) -> Result<Option<BudgetedRun>> {
    let n = stream.num_nodes();
    if spec.costs.len() != n {
        return Err(Error::invalid(format!(
            "{} costs given for {n} nodes",
            spec.costs.len()
        )));
    }
    if z == 0 {
        return Err(Error::invalid("z must be at least 1"));
    }
    let started = Instant::now();
    let drawn_before = stream.drawn();
    let zf = z as f64;

    let mut sketch = ReducedSketch::new(n, spec.k_m);
    let mut state = SolutionState::new(n);
    // Selected, skipped, or unaffordable even with the whole budget.
    let mut blocked: Vec<bool> = (0..n as NodeId).map(|v| !spec.eligible(v)).collect();
    let mut spent = 0.0;
    let mut best = RatioMax {
        node: None,
        ratio: 0.0,
    };
    best.rescan(spec, &sketch, &blocked);
    let mut full_degree = vec![0u32; n];
    let mut single: Option<(NodeId, u32)> = None;
    let mut peak_max_degree = 0;

    let bound_of = |covered: u64, ratio: f64| covered as f64 + spec.budget * ratio;
    let mut bound = bound_of(0, best.ratio);

    macro_rules! notify {
        ($event:expr) => {{
            let view = View {
                sketch: &sketch,
                state: &state,
                k: spec.k_m,
                bound,
            };
            if observer.observe($event, &view).is_break() {
                return Ok(None);
            }
        }};
    }

    notify!(Event::Start);
    loop {
        let any_fits = (0..n as NodeId).any(|v| !blocked[v as usize] && spec.fits(spent, v));
        if !any_fits {
            break;
        }
        while bound < zf {
            if state.samples() >= max_samples {
                return Err(cap_error(&state));
            }
            let edge = stream.next_edge();
            let covered = state.absorb(edge, &mut sketch);
            for &v in edge {
                full_degree[v as usize] += 1;
                if spec.eligible(v) {
                    let d = full_degree[v as usize];
                    let better = match single {
                        None => true,
                        Some((u, du)) => d > du || (d == du && v < u),
                    };
                    if better {
                        single = Some((v, d));
                    }
                }
                if !covered && !blocked[v as usize] {
                    best.offer(v, sketch.degree(v) as f64 / spec.cost(v));
                }
            }
            peak_max_degree = peak_max_degree.max(sketch.max_degree());
            bound = bound_of(state.covered(), best.ratio);
            notify!(Event::Sampled { edge, covered });
        }

        let v = best.node.expect("a candidate exists while one fits");
        blocked[v as usize] = true;
        let event = if spec.fits(spent, v) {
            spent += spec.cost(v);
            let removed = state.select(v, &mut sketch);
            Event::Selected { node: v, removed }
        } else {
            Event::Skipped { node: v }
        };
        best.rescan(spec, &sketch, &blocked);
        bound = bound_of(state.covered(), best.ratio);
        notify!(event);
    }

    let greedy_order = state.selected().to_vec();
    let greedy_covered = state.covered();
    let (solution, covered, used_single) = match single {
        Some((v, d)) if (d as u64) > greedy_covered => (vec![v], d as u64, true),
        _ => (greedy_order.clone(), greedy_covered, false),
    };
    let cost = spec.cost_of(&solution);
    Ok(Some(BudgetedRun {
        result: RunResult {
            solution,
            covered,
            samples: state.samples(),
            total_samples: stream.drawn() - drawn_before,
            z_used: z,
            peak_sketch_elements: sketch.peak_elements(),
            peak_max_degree,
            wall_time: started.elapsed(),
            certificate: None,
            rounds: Vec::new(),
        },
        greedy_order,
        greedy_covered,
        used_single,
        cost,
    }))
}

struct BudgetedRunner<'a> {
    spec: &'a BudgetSpec,
}

impl ThresholdRunner for BudgetedRunner<'_> {
    fn run(
        &self,
        stream: &mut SampleStream<'_>,
        z: u64,
        max_samples: u64,
        observer: &mut dyn Observer,
    ) -> Result<Option<RunResult>> {
        Ok(budgeted_bca_observed(stream, self.spec, z, max_samples, observer)?.map(|r| r.result))
    }
}

/// Adaptive driver over [`budgeted_bca`]: an `(1 - e^{-1/2} - epsilon)`
/// approximate solution with probability `1 - delta`. Thresholds are derived
/// with the largest affordable set size in place of `k`.
pub fn budgeted_dta(
    stream: &mut SampleStream<'_>,
    spec: &BudgetSpec,
    epsilon: f64,
    delta: f64,
    max_samples: u64,
) -> Result<RunResult> {
    if !(epsilon > 0.0 && epsilon < BUDGETED_FACTOR) {
        return Err(Error::invalid(format!(
            "epsilon must lie in (0, 1 - e^(-1/2)) for the budgeted problem, got {epsilon}"
        )));
    }
    let params = GuaranteeParams::derive_with(
        stream.num_nodes(),
        spec.k_m,
        epsilon,
        inner_delta(delta),
        DEFAULT_ALPHA,
        DEFAULT_BETA,
    )?;
    adaptive(
        stream,
        &BudgetedRunner { spec },
        &params,
        BUDGETED_FACTOR - epsilon,
        max_samples,
    )
}
