use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config {path}:{line}: {message}")]
    ConfigFile {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("unknown problem `{0}` (known: exp2d, zero, manufactured:seed=S[,deg=D])")]
    UnknownProblem(String),
    #[error("problem `{0}` has no exact solution")]
    NoExactSolution(String),
    #[error("invalid parameter: {0}")]
    Parameter(#[source] sobolev_ball::Error),
    #[error("numeric failure: {0}")]
    Numeric(#[source] sobolev_ball::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::ConfigFile { .. }
            | CliError::UnknownProblem(_)
            | CliError::NoExactSolution(_)
            | CliError::Parameter(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

impl From<sobolev_ball::Error> for CliError {
    fn from(e: sobolev_ball::Error) -> Self {
        match e {
            sobolev_ball::Error::ParameterDomain(_) => CliError::Parameter(e),
            other => CliError::Numeric(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
