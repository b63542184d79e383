use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("capacity error: {0}")]
    Capacity(String),

    #[error("budget exceeded: {needed} cells requested, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("family error: {0}")]
    Family(String),

    #[error("universe mismatch: expected `{expected}` ({expected_size}), got `{found}` ({found_size})")]
    UniverseMismatch {
        expected: String,
        expected_size: usize,
        found: String,
        found_size: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn family(msg: impl Into<String>) -> Self {
        Error::Family(msg.into())
    }
}
