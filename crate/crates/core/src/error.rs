use thiserror::Error;

/// Errors raised by the library and surfaced by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// An enclosure still straddles a decision boundary at the precision cap.
    #[error("undecidable at precision cap: {0}")]
    Undecidable(String),

    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the CLI: 2 for validation problems, 3 for
    /// resource and precision problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::Domain(_)
            | Error::HypothesisViolation(_)
            | Error::UndefinedRatio(_) => 2,
            Error::Undecidable(_) | Error::Precision(_) | Error::Resource(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
