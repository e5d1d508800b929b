use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("receive pulse leaks {outside_fraction:.3e} of its energy past the symbol period")]
    IsiViolation { outside_fraction: f64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("block of order {order} exceeds the exhaustive-search limit {max}")]
    BlockTooLarge { order: usize, max: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown detector `{name}` (allowed: {allowed})")]
    UnknownDetector { name: String, allowed: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
