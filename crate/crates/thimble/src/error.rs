use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatch, out-of-range
    /// index, unknown fixture name, mixed fields, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A structural invariant that should hold by construction failed
    /// (d∘d ≠ 0, filtration not closed under the differential, ...).
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// A precondition of an operation failed (non-cocycle passed to a cone,
    /// non-transverse pair of graded planes, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Requested an operation that is deliberately out of scope.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
