use std::fmt;

/// CLI-level error with a fixed process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed config, failed validation (exit 1).
    Usage(String),
    /// Numeric/domain failure or a verification suite out of tolerance (exit 2).
    Numeric(String),
    /// Filesystem failure (exit 3).
    Io(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn usage(msg: String) -> Self {
        CliError::Usage(msg)
    }

    pub fn from_dimer(e: dimer::Error) -> Self {
        match e {
            dimer::Error::InvalidParameter(m) => CliError::Usage(m),
            dimer::Error::Domain(m) | dimer::Error::Numeric(m) | dimer::Error::InvalidState(m) => {
                CliError::Numeric(m)
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl From<dimer::Error> for CliError {
    fn from(e: dimer::Error) -> Self {
        CliError::from_dimer(e)
    }
}
