use std::fmt;
use std::process::ExitCode;

use wikirank::rank::RankError;

/// A command failure and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, configuration or input files (exit 2).
    Input(anyhow::Error),
    /// Non-convergence or a broken numeric invariant (exit 3).
    Numeric(anyhow::Error),
    /// At least one self-check failed (exit 1).
    SelfCheck(usize),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::SelfCheck(_) => 1,
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
        })
    }

    pub fn context(self, msg: impl fmt::Display + Send + Sync + 'static) -> Failure {
        match self {
            Failure::Input(e) => Failure::Input(e.context(msg)),
            Failure::Numeric(e) => Failure::Numeric(e.context(msg)),
            other => other,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) | Failure::Numeric(e) => write!(f, "{e:#}"),
            Failure::SelfCheck(n) => write!(f, "{n} self-check(s) failed"),
        }
    }
}

impl From<RankError> for Failure {
    fn from(e: RankError) -> Self {
        match e {
            RankError::NotConverged { .. } | RankError::NotStochastic { .. } => Failure::Numeric(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

pub trait InputResult<T> {
    /// Classifies an error as an input failure.
    fn input(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> InputResult<T> for Result<T, E> {
    fn input(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Input(e.into()))
    }
}
