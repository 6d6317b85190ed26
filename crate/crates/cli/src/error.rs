use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent configuration.
    Config(String),
    Numeric(nonherm_core::Error),
    /// At least one residual check failed.
    VerificationFailed { failures: usize },
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Numeric(e) => write!(f, "numeric error: {e}"),
            CliError::VerificationFailed { failures } => write!(f, "verification failed: {failures} check(s) out of tolerance"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<nonherm_core::Error> for CliError {
    fn from(e: nonherm_core::Error) -> Self {
        CliError::Numeric(e)
    }
}
