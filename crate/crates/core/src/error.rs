use thiserror::Error;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no leading term: zero vector")]
    ZeroVector,
    #[error("degree {0:?} lies outside the declared box")]
    OutsideBox(Vec<i64>),
    #[error("chain map does not commute at homological degree {degree}, basis element {element}")]
    NotAChainMap { degree: usize, element: usize },
    #[error("ideal is not stable: {0}")]
    NotStable(String),
    #[error("lifting failed: {0}")]
    LiftFailure(String),
    #[error("search space too large: {points} points exceed the limit of {limit}; use a lower bound instead")]
    TooLarge { points: usize, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
