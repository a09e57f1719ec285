use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("graph is disconnected; restrict it to its giant component first")]
    Disconnected,
    #[error("assignment labels {assigned} vertices but the graph has {vertices}")]
    AssignmentMismatch { assigned: usize, vertices: usize },
    #[error("pagerank did not converge in {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("k = {k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("noise level {0} is outside [0, 0.30]")]
    InvalidLevel(f64),
    #[error("noise level infeasible: removed {removed} of {target} edges without disconnecting")]
    Infeasible { removed: usize, target: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("jaccard index of two empty sets is undefined")]
    EmptySets,
    #[error("permanence ranking requires a community assignment")]
    MissingAssignment,
    #[error("broadcast did not finish within {0} rounds")]
    RoundCapExceeded(usize),
}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;
