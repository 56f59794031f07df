use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive enumeration would exceed its configured cap.
    #[error("capacity exceeded: {what} is {value}, cap is {cap}")]
    Capacity { what: &'static str, value: u64, cap: u64 },

    /// Malformed graph or pair file.
    #[error("line {line}: {msg}")]
    Load { line: usize, msg: String },

    /// Malformed formula text.
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },

    /// A formula refers to a variable that is neither bound nor assigned.
    #[error("unbound variable `{0}`")]
    Unbound(String),

    /// A Monte Carlo property evaluator failed on a specific trial.
    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capacity(what: &'static str, value: usize, cap: usize) -> Self {
        Error::Capacity {
            what,
            value: value as u64,
            cap: cap as u64,
        }
    }

    /// True for the capacity-guard family, including guard failures inside a trial.
    pub fn is_capacity(&self) -> bool {
        match self {
            Error::Capacity { .. } => true,
            Error::Trial { source, .. } => source.is_capacity(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
