use thiserror::Error;

/// Failure classes of the command-line tool, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(qdfe::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("verification failed: {0} check(s) out of tolerance")]
    VerifyBreach(usize),
}

impl From<qdfe::Error> for CliError {
    fn from(e: qdfe::Error) -> Self {
        use qdfe::Error as E;
        match e {
            E::NonPhysicalState { .. } | E::InvalidParameter { .. } | E::InvalidGrid { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) | CliError::VerifyBreach(_) => 1,
        }
    }
}
