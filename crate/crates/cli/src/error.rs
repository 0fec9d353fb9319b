use defdirac_core::Error as CoreError;

/// Every failure a command can end with, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("inadmissible parameters: {0}")]
    Admissibility(CoreError),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("verification failed: {failed} of {total} checks did not pass")]
    Verification { failed: usize, total: usize },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("output encoding: {0}")]
    Encoding(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Encoding(_) => 1,
            CliError::Admissibility(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Verification { .. } => 4,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SupercriticalCoupling { .. }
            | CoreError::MassParameterTooLarge { .. }
            | CoreError::NonPositivePrincipal { .. }
            | CoreError::ComplexRoots { .. } => CliError::Admissibility(e),
            CoreError::InvalidParameter { .. }
            | CoreError::InvalidQuantumNumber { .. }
            | CoreError::DeformationRequired
            | CoreError::DomainError { .. } => CliError::Config(e.to_string()),
            CoreError::InvalidGrid(_)
            | CoreError::ConvergenceFailure(_)
            | CoreError::BracketingFailure(_) => CliError::Solver(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encoding(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encoding(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
