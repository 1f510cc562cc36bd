use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a system on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not a 3-element set of distinct vertices: {0:?}")]
    BadTriple(Vec<usize>),

    #[error("triple {0:?} is not in the system")]
    TripleNotInSystem([usize; 3]),

    #[error("vertex count {n} exceeds limit {limit} for this operation")]
    LimitExceeded { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no packing exists (search space exhausted)")]
    PackingInfeasible,

    #[error("search aborted: node limit {0} exhausted")]
    NodeLimitExceeded(u64),

    #[error("no known construction for this parameter combination: {0}")]
    NoConstruction(String),

    #[error("decomposition not available at desk scale: {0}")]
    DecompositionUnavailable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
