use std::fmt;

/// sysexits-style exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_REGIME_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 73;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Regime(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Regime(_) => EXIT_REGIME_INVALID,
            CliError::Io(_) => EXIT_IO,
            CliError::Numeric(_) => EXIT_SOFTWARE,
        }
    }

    pub fn io(path: &std::path::Path, e: impl fmt::Display) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Regime(m) => write!(f, "regime invalid: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<recoil_core::Error> for CliError {
    fn from(e: recoil_core::Error) -> Self {
        use recoil_core::Error as E;
        match e {
            E::Io(err) => CliError::Io(err.to_string()),
            E::Relativistic { .. } => CliError::Regime(e.to_string()),
            E::NonFinite(_) | E::Divergence { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
