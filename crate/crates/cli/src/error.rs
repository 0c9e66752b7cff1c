use std::path::{Path, PathBuf};

use apollonian::GasketError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Numeric(#[from] GasketError),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 2 for bad configuration, 3 for numeric or degeneracy failures, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(e) => match e {
                GasketError::InvalidSpec { .. }
                | GasketError::InvalidBound(_)
                | GasketError::InvalidGrid(_)
                | GasketError::InvalidRegion(_)
                | GasketError::InvalidCellSize(_) => 2,
                _ => 3,
            },
            CliError::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
