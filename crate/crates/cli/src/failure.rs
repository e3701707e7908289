use std::fmt;
use std::process::ExitCode;

use multiquadric::Error;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Computation(String),
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Config(_) => ExitCode::from(2),
            Failure::Computation(_) => ExitCode::from(3),
            Failure::Verification(_) => ExitCode::from(4),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Computation(m) => write!(f, "computation error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. }
            | Error::Exhausted(_)
            | Error::Singular(_)
            | Error::Evaluation { .. }
            | Error::BelowConvergenceThreshold { .. } => Failure::Computation(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;
