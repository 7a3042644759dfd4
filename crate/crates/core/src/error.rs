use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("invalid admissible set: {0}")]
    InvalidAdmissibleSet(String),

    #[error("collection is not convex")]
    NotConvex,

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("invalid order specification: {0}")]
    Order(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
