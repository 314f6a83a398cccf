use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("unknown root: {0}")]
    UnknownRoot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("unsupported scheme: {0}")]
    UnsupportedScheme(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
