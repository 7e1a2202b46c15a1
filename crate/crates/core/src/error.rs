use thiserror::Error;

/// Errors raised by the counting engine and the reduction compiler.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("{what}: work bound exceeded ({needed} > {limit})")]
    BoundExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed quantity failed an internal consistency check. These point at bugs
    /// or corrupted input data, never at user misuse.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("cannot read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn bound(what: &'static str, needed: impl ToString, limit: u64) -> Self {
        Error::BoundExceeded {
            what,
            needed: needed.to_string(),
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
