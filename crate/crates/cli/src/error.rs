use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("`{command}` needs {expected} qubits, input has {n}")]
    UnsupportedArity { command: &'static str, expected: &'static str, n: usize },
    #[error("non-finite value in report at `{0}`")]
    NonFinite(String),
    #[error("{0}")]
    Violation(String),
    #[error(transparent)]
    Core(#[from] negfont::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// 0 success, 2 parse or usage, 3 property violation, 4 unsupported arity.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::UnsupportedArity { .. } => 4,
            Self::Core(negfont::Error::UnsupportedQubitCount(_) | negfont::Error::WrongArity { .. }) => 4,
            Self::NonFinite(_) | Self::Violation(_) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
