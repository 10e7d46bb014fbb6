use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid diagonal: {0}")]
    InvalidDiagonal(String),
    /// A configured search or size cap was exceeded; the answer is inconclusive.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// A rotation system violates a structural invariant.
    #[error("structural error: {0}")]
    Structural(String),
    /// An identity that must hold did not; indicates a bug.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain;
