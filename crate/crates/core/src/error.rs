use thiserror::Error;

/// Errors raised by the geometry and lattice routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Side lengths that admit no comparison triangle in the model plane.
    #[error("inadmissible comparison triangle: {0}")]
    InadmissibleTriangle(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A linear system whose solution is not unique (degenerate span).
    #[error("singular system: {0}")]
    Singular(String),

    /// A linear system with no solution.
    #[error("inconsistent system: {0}")]
    Inconsistent(String),

    #[error("lattice is not definite (signature {0})")]
    Indefinite(String),

    /// An internal cross-check failed. Always a bug or corrupted data.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
