use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{op} is not supported for model kind `{kind}`")]
    UnsupportedKind { op: &'static str, kind: &'static str },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("no convergence: {0}")]
    NotConverged(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
