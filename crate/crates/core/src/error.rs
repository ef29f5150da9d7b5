use thiserror::Error;

/// Errors raised by the library and the `ctrust` binary.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("scenario is empty: {0}")]
    EmptyScenario(&'static str),

    #[error("attribute out of range: {0}")]
    AttributeOutOfRange(String),

    #[error("empty input")]
    EmptyInput,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("diagram over {0} variables exceeds the arena guard")]
    TooLarge(usize),

    #[error("rule `{0}` has no decision-diagram form")]
    UnsupportedRule(String),

    #[error("assignment has {actual} values, diagram needs {needed}")]
    AssignmentTooShort { needed: usize, actual: usize },

    #[error("collaborative reliability undefined: no unchanged-correct or corrected cells")]
    UndefinedRatio,

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("no results to summarize")]
    EmptyResults,

    #[error("invalid rule `{0}`")]
    InvalidRule(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the binary: 2 for invalid input, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
