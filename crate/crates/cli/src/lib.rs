//! Library half of the `entop` binary: the matrix file format, sweep CSV
//! writing, report rendering, and the self-verification suite. Kept as a lib
//! so the integration tests can drive the same code paths as the binary.

pub mod matfile;
pub mod render;
pub mod sweep;
pub mod verify;

use std::fmt;

/// Command errors carrying their exit code: usage errors exit 2, invalid
/// input (bad files, non-unitary operators, size caps) exits 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<entop::Error> for CliError {
    fn from(err: entop::Error) -> Self {
        match err {
            entop::Error::InvalidParameter(_) => CliError::Usage(err.to_string()),
            _ => CliError::Input(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Input(err.to_string())
    }
}
