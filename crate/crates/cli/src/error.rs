//! CLI-level errors and the process exit-code contract:
//! 2 = configuration or usage problem, 3 = closed-channel request,
//! 4 = verification tolerance breach, 1 = anything else.

use gascatter_core::CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(CoreError::Config(_)) | CliError::Core(CoreError::EmptyBox(_)) => 2,
            CliError::Core(CoreError::ClosedChannel { .. }) => 3,
            CliError::Tolerance(_) => 4,
            _ => 1,
        }
    }
}

pub fn io_err(context: &str, err: std::io::Error) -> CliError {
    CliError::Io(format!("{context}: {err}"))
}

pub type Result<T> = std::result::Result<T, CliError>;
