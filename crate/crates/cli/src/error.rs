use std::fmt;
use std::process::ExitCode;

use sparse_halves::Error;

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Usage(String),
    Parse(String),
    Precondition(String),
    Budget(String),
    Violation(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Budget(_) => 5,
            CliError::Violation(_) => 6,
        }
    }

    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    /// Adds the input line number to a parse or precondition message.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            CliError::Parse(m) => CliError::Parse(format!("line {line}: {m}")),
            CliError::Precondition(m) => CliError::Precondition(format!("line {line}: {m}")),
            other => other,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Io(m) => ("i/o error", m),
            CliError::Usage(m) => ("usage error", m),
            CliError::Parse(m) => ("parse error", m),
            CliError::Precondition(m) => ("precondition failed", m),
            CliError::Budget(m) => ("budget exhausted", m),
            CliError::Violation(m) => ("VIOLATION", m),
        };
        write!(f, "{kind}: {msg}")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Graph6(_) | Error::TooManyVertices { .. } | Error::Json(_) => CliError::Parse(msg),
            Error::InvalidGenerator(_) | Error::InvalidBlowUp(_) => CliError::Usage(msg),
            Error::CounterexampleCandidate { .. } => CliError::Violation(msg),
            _ => CliError::Precondition(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
