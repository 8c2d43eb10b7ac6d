use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("exactness fails at position {position}: {message}")]
    NotExact { position: usize, message: String },
    #[error("perversity out of range: {0}")]
    Perversity(String),
    #[error("singular transition matrix in degree {0}")]
    SingularTransition(i64),
    #[error("stratification not subordinate: {0}")]
    Stratification(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
