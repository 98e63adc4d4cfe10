use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Domain errors (conjecture gates, zero characters, resource caps) are kept
/// separate from malformed input so the command-line front end can map them
/// to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("invalid arity {0}: the family parameter must be at least 2")]
    InvalidArity(usize),

    #[error("generator index {index} exceeds the configured cap {cap}")]
    IndexCapExceeded { index: usize, cap: usize },

    #[error("the zero character has no direction on the character sphere")]
    ZeroCharacter,

    #[error("conjecture required: deciding Sigma^{m} for n = {n} needs the assume-sigma-m flag")]
    ConjectureRequired { n: usize, m: usize },

    #[error("rank-deficient input: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidArity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_arity(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidArity(n))
    } else {
        Ok(())
    }
}

pub(crate) fn same_arity(left: usize, right: usize) -> Result<()> {
    if left != right {
        Err(Error::ArityMismatch { left, right })
    } else {
        Ok(())
    }
}
