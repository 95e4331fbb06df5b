//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong while parsing inputs, searching for
/// constants, or verifying a construction.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input (JSON, text H-representation, rational literal, ...).
    #[error("parse error: {0}")]
    Parse(String),

    /// An operation was called outside its contract (empty interior,
    /// overlapping sets, wrong dimensions, ...). The message contains a
    /// witness when one is available.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A budgeted search ran out of budget. The message records the last
    /// counterexample witness so failures are diagnosable.
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    /// A constructed object failed its independent verification.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Internal invariant breakage; always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Precondition(_) => 2,
            Error::BudgetExhausted(_) => 3,
            Error::Verification(_) => 4,
            Error::Internal(_) => 70,
        }
    }
}
