use thiserror::Error;

/// Failures of scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero in ℚ(q)")]
    DivisionByZero,
    #[error("specialization pole")]
    SpecializationPole,
    #[error("malformed scalar: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] QError),
    #[error("invalid module: {}", .0.join("; "))]
    InvalidModule(Vec<String>),
    #[error("decomposition failure: {0}")]
    Decomposition(String),
    #[error(
        "resource bound exceeded: {what} needs {requested}, limit is {limit} (raise QLIE_MAX_DIM)"
    )]
    Resource {
        what: String,
        requested: usize,
        limit: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("normalization impossible: {0}")]
    Normalization(String),
    /// An identity that must hold by construction did not; indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
