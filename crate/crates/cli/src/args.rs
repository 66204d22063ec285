use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypercover::oracles::WeightModel;
use hypercover::UpperBound;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "hypercover",
    version,
    about = "Approximate max coverage over sampled hyperedges"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a selection algorithm and print a JSON record.
    Run(RunArgs),
    /// Estimate the coverage of a solution file.
    Eval(EvalArgs),
    /// Write a synthetic edge list.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    /// Hyperedges listed in a file, drawn uniformly.
    Explicit,
    /// Multi-hop dominating set on a graph.
    Domset,
    /// Influence maximization under independent cascade.
    Im,
    /// Shortest-path coverage of node pairs.
    Landmark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    /// Adaptive thresholds with a certified quality bound.
    Dta,
    /// One threshold run at the guarantee threshold, or at `--z`.
    Bca,
    /// Threshold run that keeps every sampled hyperedge.
    GreedyFull,
    /// Exhaustive search over the explicit hypergraph.
    Exact,
    /// Adaptive thresholds under node costs and a budget.
    BudgetedDta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    Req,
    Topk,
    Df2d,
}

impl From<Bound> for UpperBound {
    fn from(b: Bound) -> Self {
        match b {
            Bound::Req => UpperBound::Requirement,
            Bound::Topk => UpperBound::TopK,
            Bound::Df2d => UpperBound::Df2d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weights {
    Wc,
    Tri,
    File,
}

impl From<Weights> for WeightModel {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Wc => WeightModel::Wc,
            Weights::Tri => WeightModel::Tri,
            Weights::File => WeightModel::File,
        }
    }
}

/// Where the instance comes from and how its hyperedges are drawn.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Hypergraph file (explicit) or edge list (graph problems).
    #[arg(long, alias = "hypergraph")]
    pub graph: PathBuf,
    /// Treat the edge list as directed.
    #[arg(long)]
    pub directed: bool,
    /// Reverse hops for the dominating set problem.
    #[arg(long, default_value_t = 2)]
    pub hops: u32,
    /// Edge probability model for influence maximization.
    #[arg(long, value_enum, default_value_t = Weights::Wc)]
    pub weights: Weights,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Sampling threads; defaults to the available cores.
    #[arg(long, env = "HYPERCOVER_THREADS")]
    pub workers: Option<usize>,
}

impl ProblemArgs {
    pub fn worker_count(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = Algo::Dta)]
    pub algo: Algo,
    /// Solution size.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Failure probability; defaults to 1/n.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum, default_value_t = Bound::Req)]
    pub bound: Bound,
    /// Explicit threshold for bca and greedy-full.
    #[arg(long)]
    pub z: Option<u64>,
    /// Node costs, one `id cost` pair per line.
    #[arg(long)]
    pub costs: Option<PathBuf>,
    /// Total cost budget.
    #[arg(long)]
    pub budget: Option<f64>,
    #[arg(long, default_value_t = 1_000_000_000)]
    pub max_samples: u64,
    /// Write the JSON record here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Repeat the run with every sampled hyperedge retained and report both
    /// sketch sizes.
    #[arg(long)]
    pub retain_full_sketch: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub problem: ProblemArgs,
    /// One original node id per line.
    #[arg(long)]
    pub solution: PathBuf,
    /// Relative half-width of the interval.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Failure probability; defaults to 1/n.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 1_000_000_000)]
    pub max_samples: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    /// Preferential attachment with `--m` links per new node.
    Ba,
    /// Erdos-Renyi with edge probability `--p`.
    Er,
    Path,
    Star,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Edge list destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
