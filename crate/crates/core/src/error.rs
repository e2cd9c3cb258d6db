use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("certificate: {0}")]
    Certificate(String),
    #[error("transcript does not match learner parameters: {0}")]
    Mismatch(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
