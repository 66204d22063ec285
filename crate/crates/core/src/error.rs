use std::path::PathBuf;

use thiserror::Error;

use crate::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Snapshot of an algorithm run that was cut short by the sample cap.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialRun {
    pub selected: Vec<NodeId>,
    pub covered: u64,
    pub samples: u64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("budget exceeds node count")]
    BudgetExceedsNodes,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("mean floor must be positive")]
    NonPositiveMeanFloor,

    #[error("sample cap reached after {} samples ({} nodes selected)", .0.samples, .0.selected.len())]
    SampleCap(Box<PartialRun>),

    #[error("exhaustive search would visit more than {limit} candidate sets")]
    SearchTooLarge { limit: u64 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("graph needs at least {needed} nodes, found {found}")]
    TooFewNodes { needed: usize, found: usize },

    #[error("edge probabilities are required by this oracle")]
    MissingProbabilities,

    #[error("unknown node id {0}")]
    UnknownNode(u64),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
