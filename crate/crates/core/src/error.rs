use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the operation's domain (division by zero, bad parameter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration or evaluation would exceed a configured size cap.
    #[error("resource limit in {what}: size {requested} exceeds cap {cap}")]
    ResourceLimit { what: &'static str, requested: u64, cap: u64 },

    /// Input data that is structurally invalid (non-closed group, malformed permutation, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Species expression syntax error at a byte offset.
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn limit(what: &'static str, requested: impl TryInto<u64>, cap: impl TryInto<u64>) -> Self {
        Error::ResourceLimit {
            what,
            requested: requested.try_into().unwrap_or(u64::MAX),
            cap: cap.try_into().unwrap_or(u64::MAX),
        }
    }

    /// Short machine-readable tag used by the CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::Validation(_) => "validation",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
