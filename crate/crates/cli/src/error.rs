use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// The validation suite ran and at least one check failed.
    #[error("{0} validation check(s) failed")]
    ValidationFailed(usize),
    #[error(transparent)]
    Core(#[from] nonmarkov::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 ok, 1 validation failure, 2 config error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        use nonmarkov::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
            CliError::ValidationFailed(_) => 1,
            CliError::Core(E::NonFinite { .. } | E::NotConverged(_)) => 1,
            CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
