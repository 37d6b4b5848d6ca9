use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gcm_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid group table: {0}")]
    Table(String),
    #[error("invalid identity fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 when a checked claim turned out false, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(gcm_core::Error::ClaimViolated(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
