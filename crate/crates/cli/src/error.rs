use std::path::PathBuf;

use thiserror::Error;

/// Everything that ends a command early. Each variant has a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("{0}")]
    Construction(#[from] uninorm::Error),

    #[error("{0}")]
    Residual(uninorm::Error),

    #[error("{0}")]
    Analysis(uninorm::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const SCHEMA: u8 = 2;
    pub const CONSTRUCTION: u8 = 3;
    pub const RESIDUAL: u8 = 4;
    pub const OTHER: u8 = 5;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => exit::SCHEMA,
            CliError::Construction(_) => exit::CONSTRUCTION,
            CliError::Residual(_) => exit::RESIDUAL,
            CliError::Analysis(_) | CliError::Io { .. } => exit::OTHER,
        }
    }
}
