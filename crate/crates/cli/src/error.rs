//! CLI error taxonomy mapped onto process exit codes.
//!
//! Exit code contract: `0` success, `2` configuration or usage error
//! (unparseable files, contradictory fields, bad sweep grids, geometry
//! outside the model's domain), `3` numerical failure (a self-check inside
//! the numerics detected divergence, or a rerun failed to reproduce).

use std::fmt;

/// A failure with a defined process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Configuration, usage, or IO problem — exit code 2.
    Usage(String),
    /// Numerical failure or reproducibility violation — exit code 3.
    Numerical(String),
}

impl CliError {
    /// Build a usage error from any displayable message.
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Build a numerical-failure error from any displayable message.
    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError::Numerical(msg.into())
    }

    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Numerical(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<satrep_core::Error> for CliError {
    fn from(e: satrep_core::Error) -> Self {
        match e {
            satrep_core::Error::QuadratureNotConverged { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
