//! Crate-wide error type.

use thiserror::Error;

/// Alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for a graph of {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("self-loop ({0}, {0}) is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) is not present")]
    EdgeAbsent(usize, usize),

    #[error("node {0} has already been removed")]
    NodeInactive(usize),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("graph is disconnected; run the computation per connected component")]
    Disconnected,

    #[error("active component has {size} nodes, need at least {need}")]
    ComponentTooSmall { size: usize, need: usize },

    #[error("removal budget {budget} exceeds the largest component size minus 2 ({max})")]
    BudgetTooLarge { budget: usize, max: usize },

    #[error("{0}")]
    InvalidParameter(String),

    #[error("instance too large: {0} candidate sets exceed the enumeration guard of {1}")]
    EnumerationTooLarge(u128, u128),

    #[error("eigensolver did not converge within {0} matrix-vector products")]
    NoConvergence(usize),

    #[error("scores were computed for a different graph (dimension mismatch: {got} vs {want})")]
    StaleFiedler { got: usize, want: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
