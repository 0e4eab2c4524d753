use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("value out of representable range: {0}")]
    NumericRange(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("unsupported mode: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
