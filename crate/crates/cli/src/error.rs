use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("scenario `{label}`: {source}")]
    Numerical {
        label: String,
        #[source]
        source: qbattery_core::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Maps a core error raised while running `label`.
    pub fn from_core(label: &str, err: qbattery_core::Error) -> Self {
        if err.is_numerical() {
            CliError::Numerical {
                label: label.to_string(),
                source: err,
            }
        } else {
            CliError::Config(format!("scenario `{label}`: {err}"))
        }
    }

    /// 0 success, 1 usage or config error, 2 numerical failure. I/O failures
    /// count as usage errors since they almost always mean a bad path.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical { .. } => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
