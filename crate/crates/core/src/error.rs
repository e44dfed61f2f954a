use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    Param(String),

    /// Operation on a qubit that is not live in the graph state.
    #[error("graph state: {0}")]
    State(String),

    /// A protocol step was invoked with its precondition violated.
    #[error("protocol: {0}")]
    Protocol(String),

    /// The protocol ran but did not produce the target graph or spent the wrong
    /// number of Bell pairs.
    #[error(
        "verification failed: {} missing edge(s), {} extra edge(s), {} leftover ancilla(s), bell pairs {bell_pairs} vs matching sum {matching_sum}",
        missing.len(), extra.len(), leftover.len()
    )]
    Verification {
        missing: Vec<(usize, usize)>,
        extra: Vec<(usize, usize)>,
        leftover: Vec<usize>,
        bell_pairs: usize,
        matching_sum: usize,
    },

    /// Brute-force oracle refused an instance that is too large to enumerate.
    #[error("oracle limit exceeded: {0}")]
    OracleSize(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }
}
