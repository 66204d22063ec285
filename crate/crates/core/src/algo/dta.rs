use std::ops::ControlFlow;
use std::time::Instant;

use super::bca::{bca_observed, BcaConfig};
use super::state::{Event, Observer, View};
use super::{RunResult, DEFAULT_MAX_SAMPLES};
use crate::bounds::{f_lower, f_upper, GuaranteeParams, QualityBound, UpperBound, ONE_MINUS_INV_E};
use crate::error::Result;
use crate::oracles::SampleStream;
use crate::NodeId;

/// Parameters of the adaptive driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtaConfig {
    pub k: usize,
    pub epsilon: f64,
    /// Overall failure probability of the returned guarantee.
    pub delta: f64,
    pub bound: UpperBound,
    /// Cap on samples drawn across every threshold.
    pub max_samples: u64,
}

impl DtaConfig {
    pub fn new(k: usize, epsilon: f64, delta: f64) -> Self {
        DtaConfig {
            k,
            epsilon,
            delta,
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

/// What happened at one threshold of the adaptive grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundSummary {
    pub z: u64,
    /// Samples the threshold run drew before it finished or was stopped.
    pub samples: u64,
    /// Coverage of the run's own solution, when the run finished.
    pub covered: Option<u64>,
    /// Upper confidence bound on the optimum derived from this run.
    pub upper: Option<f64>,
    /// Hyperedges of this round that hit the previous candidate.
    pub assessed_covered: u64,
    /// Most recent lower confidence bound on the previous candidate.
    pub last_lower: Option<f64>,
}

/// One fixed-threshold run inside the adaptive driver.
pub(crate) trait ThresholdRunner {
    fn run(
        &self,
        stream: &mut SampleStream<'_>,
        z: u64,
        max_samples: u64,
        observer: &mut dyn Observer,
    ) -> Result<Option<RunResult>>;
}

struct CardinalityRunner {
    k: usize,
    bound: UpperBound,
}

impl ThresholdRunner for CardinalityRunner {
    fn run(
        &self,
        stream: &mut SampleStream<'_>,
        z: u64,
        max_samples: u64,
        observer: &mut dyn Observer,
    ) -> Result<Option<RunResult>> {
        let cfg = BcaConfig::new(self.k, z)
            .with_bound(self.bound)
            .with_max_samples(max_samples);
        bca_observed(stream, &cfg, observer)
    }
}

/// Sample counts `ceil((1 + beta)^t)`, `t = 0, 1, ...`, without repeats.
#[derive(Debug, Clone)]
pub(crate) struct Checkpoints {
    growth: f64,
    t: i32,
    next: u64,
}

impl Checkpoints {
    pub(crate) fn new(beta: f64) -> Self {
        Checkpoints {
            growth: 1.0 + beta,
            t: 0,
            next: 1,
        }
    }

    pub(crate) fn next(&self) -> u64 {
        self.next
    }

    pub(crate) fn advance(&mut self) {
        let current = self.next;
        while self.next <= current {
            self.t += 1;
            self.next = self.growth.powi(self.t).ceil() as u64;
        }
    }
}

/// Tracks the previous candidate's coverage on the current round's draws
/// and stops the round once its certified ratio reaches the target.
struct Assessor<'a> {
    member: Option<&'a [bool]>,
    upper: f64,
    target: f64,
    delta_prime: f64,
    checkpoints: Checkpoints,
    drawn: u64,
    hits: u64,
    last_lower: Option<f64>,
    certified: Option<QualityBound>,
}

impl Observer for Assessor<'_> {
    fn observe(&mut self, event: Event<'_>, _view: &View<'_>) -> ControlFlow<()> {
        let Event::Sampled { edge, .. } = event else {
            return ControlFlow::Continue(());
        };
        self.drawn += 1;
        let Some(member) = self.member else {
            return ControlFlow::Continue(());
        };
        if edge.iter().any(|&v| member[v as usize]) {
            self.hits += 1;
        }
        if self.drawn == self.checkpoints.next() {
            self.checkpoints.advance();
            let n = self.drawn;
            let lower = f_lower(n, self.hits as f64 / n as f64, self.delta_prime, n);
            self.last_lower = Some(lower);
            if lower / self.upper >= self.target {
                self.certified = Some(QualityBound {
                    lb: lower,
                    ub: self.upper,
                });
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    }
}

/// Upper confidence bound on the optimum after a run that reached
/// threshold `z` in `samples` draws.
pub(crate) fn round_upper(z: u64, samples: u64, beta: f64, delta_prime: f64) -> f64 {
    let samples = samples.max(1);
    let growth = 1.0 + beta;
    let t = ((samples as f64).ln() / growth.ln()).ceil() as i32;
    let horizon = (growth.powi(t).ceil() as u64).max(samples);
    let mu = (z as f64 / samples as f64).min(1.0);
    f_upper(samples, mu, delta_prime, horizon)
}

/// Runs `runner` over the threshold grid of `params`. While the run at one
/// threshold draws hyperedges, the previous run's solution is scored on the
/// same draws; the first time its lower confidence bound divided by the
/// previous upper bound reaches `target`, that solution is returned with the
/// certificate. Otherwise the solution at the last threshold is returned.
pub(crate) fn adaptive(
    stream: &mut SampleStream<'_>,
    runner: &dyn ThresholdRunner,
    params: &GuaranteeParams,
    target: f64,
    max_samples: u64,
) -> Result<RunResult> {
    let started = Instant::now();
    let drawn_before = stream.drawn();
    let n = stream.num_nodes();
    let mut rounds = Vec::new();
    let mut candidate: Option<(RunResult, Vec<bool>, f64)> = None;

    for z in params.threshold_grid() {
        let used = stream.drawn() - drawn_before;
        let remaining = max_samples.saturating_sub(used);
        let (member, upper) = match &candidate {
            Some((_, member, upper)) => (Some(member.as_slice()), *upper),
            None => (None, 0.0),
        };
        let mut assessor = Assessor {
            member,
            upper,
            target,
            delta_prime: params.delta_prime,
            checkpoints: Checkpoints::new(params.beta),
            drawn: 0,
            hits: 0,
            last_lower: None,
            certified: None,
        };
        let outcome = runner.run(stream, z, remaining, &mut assessor)?;
        let Assessor {
            drawn,
            hits,
            last_lower,
            certified,
            ..
        } = assessor;
        let Some(run) = outcome else {
            rounds.push(RoundSummary {
                z,
                samples: drawn,
                covered: None,
                upper: None,
                assessed_covered: hits,
                last_lower,
            });
            let (mut best, _, _) = candidate.expect("only a candidate can be certified");
            best.covered = hits;
            best.samples = drawn;
            best.certificate = certified;
            best.total_samples = stream.drawn() - drawn_before;
            best.wall_time = started.elapsed();
            best.rounds = rounds;
            return Ok(best);
        };

        let upper = round_upper(z, run.samples, params.beta, params.delta_prime);
        rounds.push(RoundSummary {
            z,
            samples: run.samples,
            covered: Some(run.covered),
            upper: Some(upper),
            assessed_covered: hits,
            last_lower,
        });
        let member = membership(n, &run.solution);
        candidate = Some((run, member, upper));
    }

    let (mut last, _, _) = candidate.expect("threshold grid is never empty");
    last.total_samples = stream.drawn() - drawn_before;
    last.wall_time = started.elapsed();
    last.rounds = rounds;
    Ok(last)
}

fn membership(n: usize, set: &[NodeId]) -> Vec<bool> {
    let mut member = vec![false; n];
    for &v in set {
        member[v as usize] = true;
    }
    member
}

/// Share of the overall failure probability given to the guarantee
/// constants; the rest covers the confidence bounds.
pub(crate) fn inner_delta(delta: f64) -> f64 {
    3.0 * delta / 7.0
}

/// Dynamic threshold algorithm: an `(1 - 1/e - epsilon)`-approximate
/// `k`-cover with probability `1 - delta`, using as few samples as the
/// instance allows.
pub fn dta(stream: &mut SampleStream<'_>, cfg: &DtaConfig) -> Result<RunResult> {
    let params = GuaranteeParams::derive(
        stream.num_nodes(),
        cfg.k,
        cfg.epsilon,
        inner_delta(cfg.delta),
    )?;
    let runner = CardinalityRunner {
        k: cfg.k,
        bound: cfg.bound,
    };
    adaptive(
        stream,
        &runner,
        &params,
        ONE_MINUS_INV_E - cfg.epsilon,
        cfg.max_samples,
    )
}
