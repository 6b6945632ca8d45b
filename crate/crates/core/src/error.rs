use thiserror::Error;

/// Errors raised by the numeration library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot compare finite words of different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("word {word} does not satisfy the {kind} shift condition")]
    NotParryValid { word: String, kind: &'static str },

    #[error("invalid base: {0}")]
    InvalidBase(String),

    #[error("the word 10(0) corresponds to the degenerate base 1")]
    DegenerateBase,

    #[error("interval refinement exhausted its budget of {budget} bisections")]
    RefinementBudget { budget: usize },

    #[error("expansion of 1 not resolved within depth {depth}")]
    Unresolved { depth: usize },

    #[error("base is not a simple Parry number (expansion of 1 is {0})")]
    NotSimpleParry(String),

    #[error("variant/input mismatch: {0}")]
    VariantMismatch(String),

    #[error("invalid numeration system: {0}")]
    InvalidSystem(String),

    #[error("cannot parse {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
