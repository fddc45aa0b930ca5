use thiserror::Error;

/// Errors raised by the election model, the solvers and the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("unsupported rule: {0}")]
    UnsupportedRule(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search space or structure is larger than its configured cap.
    #[error("{what} too large: {needed} exceeds cap {cap}")]
    Resource {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("swap set not admissible: {0}")]
    Admissibility(String),

    #[error("{0}")]
    Domain(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
