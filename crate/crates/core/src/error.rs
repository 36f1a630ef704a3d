//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown type label `{0}`")]
    UnknownType(String),
    #[error("noise edge `{0}` must be terminal")]
    NonTerminalNoise(String),
    #[error("invalid scaling: {0}")]
    InvalidScaling(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("divergent convolution: {0}")]
    Divergent(String),
    #[error("coproduct is not connected: {0}")]
    NotConnected(String),
    #[error("invalid json: {0}")]
    Json(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
