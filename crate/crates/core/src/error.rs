use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid web at slice {slice}: {msg}")]
    Web { slice: usize, msg: String },
    #[error("{0}")]
    Domain(String),
    #[error("extract failed: {0}")]
    Extract(String),
    #[error("d_out * d_in != 0: {0}")]
    NotComplex(String),
    #[error("map does not descend to homology: {0}")]
    NotChainMap(String),
    #[error("closure mismatch: {0}")]
    Closure(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
