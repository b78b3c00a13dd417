use std::path::PathBuf;

/// Toolkit-level errors, grouped by process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("config error: {0}")]
    Config(String),
    /// Exit code 3.
    #[error("input error: {0}")]
    Input(String),
    /// Exit code 4.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Exit code 3.
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Input(_) | CliError::Io { .. } => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<lifecircle_core::Error> for CliError {
    fn from(e: lifecircle_core::Error) -> Self {
        use lifecircle_core::Error as E;
        match e {
            E::Config(msg) => CliError::Config(msg),
            E::InvalidCoordinate { .. } | E::UnknownUid(_) => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
