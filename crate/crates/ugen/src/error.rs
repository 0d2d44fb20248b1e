//! CLI errors and their exit codes.

use std::fmt;

use ugen_core::Error;

/// 0 ok, 1 validation failure, 2 usage or parse error, 3 cap or hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Validation = 1,
    Usage = 2,
    Cap = 3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ExitKind,
    pub msg: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError { kind: ExitKind::Usage, msg: msg.into() }
    }

    pub fn cap(msg: impl Into<String>) -> CliError {
        CliError { kind: ExitKind::Cap, msg: msg.into() }
    }

    pub fn validation(msg: impl Into<String>) -> CliError {
        CliError { kind: ExitKind::Validation, msg: msg.into() }
    }

    /// Input that failed to parse.
    pub fn parse(e: impl fmt::Display) -> CliError {
        CliError::usage(format!("parse error: {e}"))
    }

    pub fn code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let kind = match e {
            Error::HypothesisViolated { .. }
            | Error::DepthExplosion(_)
            | Error::SearchExhausted(_)
            | Error::GroupTooLarge(_)
            | Error::TooLarge(_)
            | Error::DegreeTooLarge { .. } => ExitKind::Cap,
            _ => ExitKind::Usage,
        };
        CliError { kind, msg: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::usage(format!("io error: {e}"))
    }
}
