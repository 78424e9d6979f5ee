use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {node} out of range for graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size cap exceeded: {what} has {size} > {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent exact computation: {0}")]
    Inconsistent(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
