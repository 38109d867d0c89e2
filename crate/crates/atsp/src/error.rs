use std::io;
use std::path::{Path, PathBuf};

/// Process exit status for each error class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Validation = 1,
    Io = 2,
    Precondition = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    /// Malformed input text. `line` is 1-based.
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },
    #[error("{context}: {source}")]
    Solver { context: String, source: atsp_core::Error },
    #[error(transparent)]
    Core(#[from] atsp_core::Error),
}

impl AppError {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        AppError::Io { path: path.as_ref().to_path_buf(), source }
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        AppError::Parse { line: Some(line), message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        AppError::Parse { line: None, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Io { .. } => ExitCode::Io,
            AppError::Parse { .. } => ExitCode::Validation,
            AppError::Solver { source: e, .. } | AppError::Core(e) => {
                if e.is_precondition() {
                    ExitCode::Precondition
                } else {
                    ExitCode::Validation
                }
            }
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, AppError> {
    std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), AppError> {
    std::fs::write(path, text).map_err(|e| AppError::io(path, e))
}
