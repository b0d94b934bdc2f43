use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, unwritable output.
    #[error("{0}")]
    Io(String),
    /// Valid input the tool refuses to process (too many observables,
    /// unsupported profile, bad parameter).
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("no entanglement certificate found")]
    NoCertificate,
    /// A computed result violates a proven relation; indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Unsupported(_) => 2,
            CliError::NoCertificate => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<numrange::Error> for CliError {
    fn from(e: numrange::Error) -> Self {
        use numrange::Error as E;
        match e {
            E::Config(_) | E::UnsupportedDimension(_) | E::Domain(_) | E::DegenerateBody(_) => {
                CliError::Unsupported(e.to_string())
            }
            E::InvalidMatrix(_) | E::Shape(_) => CliError::Io(e.to_string()),
            E::Geometry(_) | E::Oracle { .. } => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
