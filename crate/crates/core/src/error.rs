use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text or JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input parsed but violates a structural rule (commutativity, shapes,
    /// downward closure, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The Alexander dual of a complex containing the top face `[n]` has no
    /// faces at all, not even the empty one.
    #[error("dual is the void complex: [n] is a face of the input")]
    VoidDual,

    /// An operation whose definition needs a non-void complex got the void one.
    #[error("void complex rejected: {0}")]
    VoidComplex(&'static str),

    /// A linear map does not descend to the requested subquotients.
    #[error("map does not descend to the quotient: {0}")]
    NotDescending(String),

    /// An internal consistency check failed (sign convention, d∘d, ...).
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Invalid(_) | Error::VoidDual | Error::VoidComplex(_) => 3,
            Error::NotDescending(_) | Error::Internal(_) => 4,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    }
}
