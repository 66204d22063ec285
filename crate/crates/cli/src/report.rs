use hypercover::algo::RoundSummary;
use hypercover::{CoverageEstimate, QualityBound};
use serde::Serialize;

use crate::args::{Algo, EvalArgs, GenKind, Problem, RunArgs};

pub const RUN_SCHEMA: &str = "hypercover.run/1";
pub const EVAL_SCHEMA: &str = "hypercover.eval/1";
pub const GEN_SCHEMA: &str = "hypercover.gen/1";

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub lb: f64,
    pub ub: f64,
    pub ratio: f64,
}

impl From<QualityBound> for Certificate {
    fn from(q: QualityBound) -> Self {
        Certificate {
            lb: q.lb,
            ub: q.ub,
            ratio: q.ratio(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Round {
    pub z: u64,
    pub samples: u64,
    pub covered: Option<u64>,
    pub upper: Option<f64>,
    pub assessed_covered: u64,
    pub last_lower: Option<f64>,
}

impl From<&RoundSummary> for Round {
    fn from(r: &RoundSummary) -> Self {
        Round {
            z: r.z,
            samples: r.samples,
            covered: r.covered,
            upper: r.upper,
            assessed_covered: r.assessed_covered,
            last_lower: r.last_lower,
        }
    }
}

/// The retained-sketch comparison run on the same sample stream.
#[derive(Debug, Serialize)]
pub struct FullSketch {
    pub peak_sketch_elements: u64,
    pub peak_sketch_bytes: u64,
    pub solution: Vec<u64>,
    pub covered: u64,
    /// Greedy over every hyperedge the reduced run consumed.
    pub greedy_solution: Vec<u64>,
    pub greedy_covered: u64,
    /// Full peak divided by reduced peak.
    pub reduction_factor: f64,
}

#[derive(Debug, Serialize)]
pub struct RunConfigEcho<'a> {
    #[serde(flatten)]
    pub args: &'a RunArgs,
    pub effective_delta: f64,
    pub effective_workers: usize,
}

#[derive(Debug, Serialize)]
pub struct RunRecord<'a> {
    pub schema: &'static str,
    pub problem: Problem,
    pub algo: Algo,
    pub n: usize,
    /// Original node ids in selection order.
    pub solution: Vec<u64>,
    /// Hyperedges the solution covers among those it was judged on.
    pub covered: u64,
    /// Hyperedges the solution was judged on.
    pub samples: u64,
    /// Hyperedges drawn over the whole run.
    pub total_samples: u64,
    pub coverage: f64,
    pub z_used: Option<u64>,
    pub peak_sketch_elements: u64,
    pub peak_sketch_bytes: u64,
    pub wall_time_s: f64,
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rounds: Vec<Round>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_sketch: Option<FullSketch>,
    pub config: RunConfigEcho<'a>,
}

#[derive(Debug, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub lb: f64,
    pub ub: f64,
    pub samples: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub precise: bool,
}

impl From<&CoverageEstimate> for Estimate {
    fn from(e: &CoverageEstimate) -> Self {
        Estimate {
            mean: e.mean,
            lb: e.lb,
            ub: e.ub,
            samples: e.samples,
            epsilon: e.epsilon,
            delta: e.delta,
            precise: e.precise,
        }
    }
}

/// The estimate in the problem's natural unit.
#[derive(Debug, Serialize)]
pub struct Scaled {
    pub unit: &'static str,
    pub factor: f64,
    pub mean: f64,
    pub lb: f64,
    pub ub: f64,
}

#[derive(Debug, Serialize)]
pub struct EvalConfigEcho<'a> {
    #[serde(flatten)]
    pub args: &'a EvalArgs,
    pub effective_delta: f64,
    pub effective_workers: usize,
}

#[derive(Debug, Serialize)]
pub struct EvalRecord<'a> {
    pub schema: &'static str,
    pub problem: Problem,
    pub n: usize,
    pub solution: Vec<u64>,
    pub estimate: Estimate,
    pub scaled: Scaled,
    /// Exact weighted coverage, when the hyperedges are listed.
    pub exact: Option<f64>,
    pub wall_time_s: f64,
    pub config: EvalConfigEcho<'a>,
}

#[derive(Debug, Serialize)]
pub struct GenRecord {
    pub schema: &'static str,
    pub kind: GenKind,
    pub n: u64,
    pub edges: usize,
    pub out: String,
}
