use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid induced map: {0}")]
    InvalidMap(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("unsupported class: {0}")]
    UnsupportedClass(String),

    #[error("unknown preset {0:?} (expected geometric or paper)")]
    UnknownPreset(String),

    #[error("unknown format {0:?} (expected text or json)")]
    UnknownFormat(String),

    #[error("unknown claim {0:?}")]
    UnknownClaim(String),

    #[error("{0}")]
    Usage(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("sort error: {0}")]
    Sort(String),

    #[error("{op}: {source}")]
    Eval {
        op: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_op(self, op: &str) -> Error {
        match self {
            e @ Error::Eval { .. } => e,
            e => Error::Eval {
                op: op.to_string(),
                source: Box::new(e),
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
