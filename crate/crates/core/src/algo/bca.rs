use std::time::Instant;

use super::state::{Event, NoObserver, Observer, SolutionState, View};
use super::{RunResult, DEFAULT_MAX_SAMPLES};
use crate::bounds::{f_df2d, f_requirement, f_topk, GuaranteeParams, UpperBound};
use crate::error::{Error, PartialRun, Result};
use crate::oracles::SampleStream;
use crate::sketch::ReducedSketch;

/// Parameters of one fixed-threshold run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BcaConfig {
    pub k: usize,
    pub z: u64,
    pub bound: UpperBound,
    /// Samples this run may draw before giving up.
    pub max_samples: u64,
}

impl BcaConfig {
    pub fn new(k: usize, z: u64) -> Self {
        BcaConfig {
            k,
            z,
            bound: UpperBound::default(),
            max_samples: DEFAULT_MAX_SAMPLES,
        }
    }

    pub fn with_bound(mut self, bound: UpperBound) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_max_samples(mut self, max_samples: u64) -> Self {
        self.max_samples = max_samples;
        self
    }
}

/// Evaluates the configured upper bound.
///
/// The dual bound costs a pass over all nodes, so between exact evaluations
/// it is replaced by `cached + k * draws`, which is still an upper bound
/// because one hyperedge raises the dual objective by at most `k` at every
/// `alpha`. An exact evaluation happens only when that relaxed value would
/// stop the sampling loop. A selection invalidates the cache.
pub(crate) struct BoundTracker {
    kind: UpperBound,
    k: usize,
    cached: f64,
    since: u64,
    fresh: bool,
    pub(crate) exact_evaluations: u64,
}

impl BoundTracker {
    pub(crate) fn new(kind: UpperBound, k: usize) -> Self {
        BoundTracker {
            kind,
            k,
            cached: 0.0,
            since: 0,
            fresh: false,
            exact_evaluations: 0,
        }
    }

    pub(crate) fn value(&mut self, sketch: &ReducedSketch, state: &SolutionState, z: f64) -> f64 {
        let req = f_requirement(state.covered(), self.k, sketch.max_degree()) as f64;
        match self.kind {
            UpperBound::Requirement => req,
            UpperBound::TopK => f_topk(state.covered(), sketch.top_k_sum()) as f64,
            UpperBound::Df2d => {
                if self.fresh {
                    let relaxed = (self.cached + (self.k as u64 * self.since) as f64).min(req);
                    if relaxed < z {
                        return relaxed;
                    }
                }
                let exact = f_df2d(
                    state.covered(),
                    self.k,
                    sketch.degrees(),
                    state.covered_count(),
                )
                .min(req);
                self.exact_evaluations += 1;
                self.cached = exact;
                self.since = 0;
                self.fresh = true;
                exact
            }
        }
    }

    pub(crate) fn sampled(&mut self) {
        self.since += 1;
    }

    pub(crate) fn selected(&mut self) {
        self.fresh = false;
    }
}

pub(crate) fn cap_error(state: &SolutionState) -> Error {
    Error::SampleCap(Box::new(PartialRun {
        selected: state.selected().to_vec(),
        covered: state.covered(),
        samples: state.samples(),
    }))
}

/// Runs the bounded coverage algorithm with threshold `z`: sample while the
/// upper bound on the best `k`-cover of the drawn hyperedges stays below
/// `z`, then select the node covering the most stored hyperedges, `k` times.
pub fn bca(stream: &mut SampleStream<'_>, cfg: &BcaConfig) -> Result<RunResult> {
    Ok(bca_observed(stream, cfg, &mut NoObserver)?.expect("observer never interrupts"))
}

/// [`bca`] with every event reported to `observer`. Returns `None` when the
/// observer interrupts the run.
pub fn bca_observed(
    stream: &mut SampleStream<'_>,
    cfg: &BcaConfig,
    observer: &mut dyn Observer,
) -> Result<Option<RunResult>> {
    let n = stream.num_nodes();
    if cfg.k == 0 || cfg.z == 0 {
        return Err(Error::invalid("k and z must be at least 1"));
    }
    if cfg.k > n {
        return Err(Error::BudgetExceedsNodes);
    }
    let started = Instant::now();
    let drawn_before = stream.drawn();
    let z = cfg.z as f64;

    let mut sketch = ReducedSketch::new(n, cfg.k);
    let mut state = SolutionState::new(n);
    let mut tracker = BoundTracker::new(cfg.bound, cfg.k);
    let mut peak_max_degree = 0;
    let mut bound = tracker.value(&sketch, &state, z);

    macro_rules! notify {
        ($event:expr) => {{
            let view = View {
                sketch: &sketch,
                state: &state,
                k: cfg.k,
                bound,
            };
            if observer.observe($event, &view).is_break() {
                return Ok(None);
            }
        }};
    }

    notify!(Event::Start);
    for _ in 0..cfg.k {
        while bound < z {
            if state.samples() >= cfg.max_samples {
                return Err(cap_error(&state));
            }
            let edge = stream.next_edge();
            let covered = state.absorb(edge, &mut sketch);
            tracker.sampled();
            peak_max_degree = peak_max_degree.max(sketch.max_degree());
            bound = tracker.value(&sketch, &state, z);
            notify!(Event::Sampled { edge, covered });
        }
        let (u, _) = sketch.max_degree_node(state.in_solution())?;
        let removed = state.select(u, &mut sketch);
        tracker.selected();
        bound = tracker.value(&sketch, &state, z);
        notify!(Event::Selected { node: u, removed });
    }

    Ok(Some(RunResult {
        solution: state.selected().to_vec(),
        covered: state.covered(),
        samples: state.samples(),
        total_samples: stream.drawn() - drawn_before,
        z_used: cfg.z,
        peak_sketch_elements: sketch.peak_elements(),
        peak_max_degree,
        wall_time: started.elapsed(),
        certificate: None,
        rounds: Vec::new(),
    }))
}

/// [`bca`] at the threshold that makes its output `(1 - 1/e - epsilon)`
/// approximate with probability `1 - delta`.
pub fn bca_fixed_guarantee(
    stream: &mut SampleStream<'_>,
    k: usize,
    epsilon: f64,
    delta: f64,
    bound: UpperBound,
    max_samples: u64,
) -> Result<RunResult> {
    let params = GuaranteeParams::derive(stream.num_nodes(), k, epsilon, delta)?;
    let cfg = BcaConfig::new(k, params.z_star)
        .with_bound(bound)
        .with_max_samples(max_samples);
    bca(stream, &cfg)
}

#[cfg(test)]
mod tests {
    use std::ops::ControlFlow;

    use super::*;
    use crate::oracles::{ExplicitOracle, ReplayOracle};
    use crate::sketch::Hyperedge;

    fn replay(n: usize, edges: &[&[u32]]) -> ReplayOracle {
        ReplayOracle::new(
            n,
            edges.iter().map(|e| Hyperedge::from(e.to_vec())).collect(),
        )
    }

    #[test]
    fn running_example() {
        let o = replay(4, &[&[1, 2], &[1, 3], &[2]]);
        let mut s = SampleStream::new(&o, 0);
        let run = bca(&mut s, &BcaConfig::new(2, 4)).unwrap();
        assert_eq!(run.solution, vec![1, 2]);
        assert_eq!((run.covered, run.samples), (3, 3));
    }

    #[test]
    fn threshold_one_selects_from_first_nonempty_edge() {
        let o = replay(5, &[&[], &[3, 4]]);
        let mut s = SampleStream::new(&o, 0);
        let run = bca(&mut s, &BcaConfig::new(1, 1)).unwrap();
        assert_eq!(run.solution, vec![3]);
        assert_eq!(run.samples, 2);
    }

    #[test]
    fn all_empty_stream_hits_the_cap() {
        let o = replay(3, &[&[]]);
        let mut s = SampleStream::new(&o, 0);
        let err = bca(&mut s, &BcaConfig::new(1, 5).with_max_samples(100)).unwrap_err();
        match err {
            Error::SampleCap(p) => assert_eq!((p.samples, p.selected.len()), (100, 0)),
            other => panic!("unexpected {other}"),
        }
        assert!(Error::SampleCap(Box::new(PartialRun {
            selected: vec![],
            covered: 0,
            samples: 1
        }))
        .to_string()
        .starts_with("sample cap reached"));
    }

    #[test]
    fn budget_larger_than_graph() {
        let o = replay(2, &[&[0]]);
        let mut s = SampleStream::new(&o, 0);
        assert!(matches!(
            bca(&mut s, &BcaConfig::new(3, 5)),
            Err(Error::BudgetExceedsNodes)
        ));
    }

    #[test]
    fn observer_can_interrupt() {
        let o = replay(3, &[&[0, 1]]);
        let mut s = SampleStream::new(&o, 0);
        let mut seen = 0;
        let mut stop_after_two = |e: Event<'_>, _: &View<'_>| {
            if matches!(e, Event::Sampled { .. }) {
                seen += 1;
            }
            if seen == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        };
        let out = bca_observed(&mut s, &BcaConfig::new(1, 100), &mut stop_after_two).unwrap();
        assert!(out.is_none());
        assert_eq!(s.drawn(), 2);
    }

    #[test]
    fn relaxed_dual_bound_matches_exact_decisions() {
        let edges: Vec<Hyperedge> = (0..40u32)
            .map(|i| Hyperedge::from(vec![i % 7, (i * 3 + 1) % 7, (i * 5 + 2) % 9]))
            .collect();
        let o = ExplicitOracle::new(9, edges).unwrap();
        for z in [3, 10, 25, 60] {
            let cfg = BcaConfig::new(3, z).with_bound(UpperBound::Df2d);
            let lazy = bca(&mut SampleStream::new(&o, 11), &cfg).unwrap();
            let mut exact_stream = SampleStream::new(&o, 11);
            let exact = crate::algo::bca_full_sketch(&mut exact_stream, &cfg).unwrap();
            assert_eq!(lazy.solution, exact.solution, "z={z}");
            assert_eq!(lazy.samples, exact.samples, "z={z}");
        }
    }
}
