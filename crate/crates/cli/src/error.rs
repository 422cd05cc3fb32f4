use std::fmt;

use mscheme::Error;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input document or argument.
    Schema(String),
    Io(String),
    Core(Error),
    /// The oracle could not decide the claim within its budget.
    Inconclusive(String),
    /// The oracle found a counterexample to a computed result.
    Refuted(String),
    Unsupported(String),
}

impl CliError {
    /// Process exit status: 2 for violated preconditions, 3 for
    /// inconclusive verification, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::Budget(_)
                | Error::SeminormalWindow(_)
                | Error::Decomposition { .. }
                | Error::Verification(_) => 1,
                _ => 2,
            },
            CliError::Inconclusive(_) => 3,
            CliError::Unsupported(_) => 2,
            CliError::Schema(_) | CliError::Io(_) | CliError::Refuted(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Inconclusive(m) => write!(f, "verification inconclusive: {m}"),
            CliError::Refuted(m) => write!(f, "verification refuted the result: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
