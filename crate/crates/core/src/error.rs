use thiserror::Error;

/// Errors shared by every solver and model operation.
///
/// "No solution within budget" is never an error; solvers report it as
/// `Ok(None)`. [`Error::ResourceLimit`] is reserved for searches that were
/// cut off before they could decide.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("solution has {found} positions but the instance has {expected} sensors")]
    LengthMismatch { expected: usize, found: usize },

    #[error("instance has no sensors")]
    EmptyInstance,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search space of {estimate} states exceeds the cap of {cap}")]
    ResourceLimit { estimate: u128, cap: u128 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
