use thiserror::Error;

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    ValidationFailed,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Success
        } else {
            Status::ValidationFailed
        }
    }
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("invalid parameters: {0}")]
    Domain(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    /// Everything that stops a command before it produces a verdict is a
    /// usage error as far as the exit status goes.
    pub fn exit_code(&self) -> u8 {
        2
    }

    pub fn domain(e: impl std::fmt::Display) -> Self {
        LabError::Domain(e.to_string())
    }
}
