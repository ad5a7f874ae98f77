use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed")]
    Verification,
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verification => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io { .. } => 3,
        })
    }
}

impl From<spinsq::Error> for CliError {
    fn from(e: spinsq::Error) -> Self {
        match e {
            spinsq::Error::Domain(msg) => CliError::Usage(msg),
            spinsq::Error::Capacity { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
