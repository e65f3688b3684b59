use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] infonet::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    InFile { path: PathBuf, source: infonet::Error },

    #[error("config: {0}")]
    Config(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub fn in_file(path: impl Into<PathBuf>) -> impl FnOnce(infonet::Error) -> CliError {
        let path = path.into();
        move |source| CliError::InFile { path, source }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) | CliError::InFile { source: e, .. } => e.code(),
            CliError::Io { .. } => "E_IO",
            CliError::Config(_) => "E_CONFIG",
        }
    }

    /// Process exit status. 2 is left to argument-parsing errors.
    pub fn exit_status(&self) -> u8 {
        match self.code() {
            "E_IO" => 3,
            "E_PARSE" => 4,
            "E_INPUT" => 5,
            "E_COVERAGE" => 6,
            "E_COMPUTE" => 7,
            "E_CONFIG" => 8,
            _ => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Core(e.into())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
