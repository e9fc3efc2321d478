use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension bound exceeded: {0}")]
    DimensionBound(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("enumeration budget of {budget} nodes exceeded")]
    Budget { budget: u64 },
    #[error("arity bound exceeded: need evaluation at {needed}_+, tabulated up to {bound}_+")]
    ArityBound { needed: usize, bound: usize },
    #[error("value is not finite: {0}")]
    Infinite(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degree {degree} outside trusted range (up to {limit})")]
    Truncation { degree: usize, limit: usize },
    #[error("parse error at {file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("unknown object `{0}`")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
