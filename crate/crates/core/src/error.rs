use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    Signature(String),
    #[error("leg index {leg} out of range for rank {rank}")]
    Leg { leg: usize, rank: usize },
    #[error("index space too large to encode ({0} legs)")]
    Overflow(usize),
    #[error("singular: {0}")]
    Singular(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structural check failed: {0}")]
    Structural(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
