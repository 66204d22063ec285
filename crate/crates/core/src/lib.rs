//! Approximate Max-k-Cover over hypergraphs that are only reachable through
//! a random hyperedge oracle.
//!
//! The algorithms grow a solution while sampling, keep only the hyperedges
//! the partial solution has not yet covered, and stop sampling as soon as an
//! upper bound on the best achievable coverage reaches a threshold.
//!
//! ```
//! use hypercover::algo::{bca, BcaConfig};
//! use hypercover::oracles::{ExplicitOracle, SampleStream};
//! use hypercover::sketch::Hyperedge;
//!
//! let oracle = ExplicitOracle::new(
//!     4,
//!     vec![Hyperedge::from([0, 1]), Hyperedge::from([1, 2]), Hyperedge::from([3])],
//! )
//! .unwrap();
//! let mut stream = SampleStream::new(&oracle, 7);
//! let run = bca(&mut stream, &BcaConfig::new(2, 50)).unwrap();
//! assert_eq!(run.solution.len(), 2);
//! ```

pub mod algo;
pub mod bounds;
pub mod error;
pub mod eval;
pub mod generate;
pub mod oracles;
pub mod sketch;

/// Dense node identifier in `0..n`.
pub type NodeId = u32;

pub use algo::{BudgetSpec, RunResult, SolutionState};
pub use bounds::{GuaranteeParams, QualityBound, UpperBound};
pub use error::{Error, PartialRun, Result};
pub use eval::{estimate_coverage, CoverageEstimate};
pub use oracles::{SampleOracle, SampleStream};
pub use sketch::{Hyperedge, ReducedSketch, StepwiseHeap};
