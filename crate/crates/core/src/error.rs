use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContestError {
    #[error("invalid value profile: {0}")]
    InvalidValues(String),
    #[error("invalid effort profile: {0}")]
    InvalidEfforts(String),
    #[error("profile has {got} entries but the game has {expected} contestants")]
    LengthMismatch { expected: usize, got: usize },
    #[error("contestant index {index} out of range for {n} contestants")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("grid of {cells} cells exceeds the budget of {limit}")]
    BudgetExceeded { cells: u128, limit: u128 },
}

pub type Result<T, E = ContestError> = std::result::Result<T, E>;

pub(crate) fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(ContestError::Config(msg.into()))
}
