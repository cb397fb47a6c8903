use thiserror::Error;

/// Errors raised by the exact-algebra and Seifert-matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),

    #[error("matrix is not reducible: {0}")]
    NotReducible(String),

    #[error("pattern mismatch: expected a {expected} pattern")]
    PatternMismatch { expected: &'static str },

    #[error("invalid congruence: {0}")]
    InvalidCongruence(String),

    #[error("move {index} failed: {source}")]
    MoveFailed { index: usize, source: Box<Error> },

    #[error("operation requires an invertible Seifert matrix")]
    RequiresInvertible,

    #[error("operation requires an integral matrix")]
    IntegralityRequired,

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("divisibility violation: {0}")]
    Divisibility(String),

    #[error("lattice error: {0}")]
    Lattice(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
