use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge}: node index {node} out of range for {n} nodes")]
    NodeOutOfRange { edge: usize, node: usize, n: usize },

    #[error("edge {edge} has {size} distinct member(s); hyperedges need at least two")]
    EdgeTooSmall { edge: usize, size: usize },

    #[error("line {line}: hyperedge has {size} distinct token(s); hyperedges need at least two")]
    LineEdgeTooSmall { line: usize, size: usize },

    #[error("not a hitting set: edge {edge} {members:?} is not hit")]
    NotHittingSet { edge: usize, members: Vec<usize> },

    #[error("hypergraph is not {expected}-uniform (found an edge of size {found})")]
    NotUniform { expected: usize, found: usize },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large for the exact oracle: {0}")]
    TooLarge(String),

    #[error("oracle budget exceeded after {elapsed_ms} ms (best bounds: lower {lower}, upper {upper})")]
    BudgetExceeded { elapsed_ms: u128, lower: usize, upper: usize },

    #[error("enumeration budget exceeded after {elapsed_ms} ms ({found} sets found so far)")]
    EnumerationBudget { elapsed_ms: u128, found: usize },

    #[error("core set is empty")]
    EmptyCore,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
