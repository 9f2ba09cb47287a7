//! Spec-file parsing, report documents and the command implementations
//! behind the `lring` binary.

use std::fmt;

pub mod commands;
pub mod report;
pub mod spec;

pub use report::{Check, ReportDoc, TaskReport};
pub use spec::{Resolved, SpecFile};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Input(String),
    UnknownName {
        what: &'static str,
        name: String,
    },
    /// A library self-check failed; exit code 1.
    Soundness(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Soundness(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::UnknownName { what, name } => write!(f, "unknown {what} {name:?}"),
            CliError::Soundness(m) => write!(f, "self-check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub(crate) fn lib_error(e: lring::Error) -> CliError {
    match e {
        lring::Error::SoundnessBug(m) => CliError::Soundness(m),
        e => CliError::Input(e.to_string()),
    }
}

impl From<lring::Error> for CliError {
    fn from(e: lring::Error) -> CliError {
        lib_error(e)
    }
}
