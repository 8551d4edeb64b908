use thiserror::Error;

/// Errors raised by the engine.
///
/// Theorem-level disagreements (a Galois round-trip that does not close, a
/// positivity verdict that contradicts S²-invariance) are not errors: they are
/// reported as failing entries. The variants here cover malformed input and
/// constructions that cannot proceed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionError { expected: usize, found: usize },

    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),

    #[error("not cosemisimple: {0}")]
    NotCosemisimple(String),

    #[error("not a CQG algebra: {0}")]
    NotCqg(String),

    #[error("not a right coideal *-subalgebra: {condition} fails (residual {residual:.3e})")]
    NotCoideal { condition: String, residual: f64 },

    #[error("x -> (Sx)* does not descend to the quotient (residual {0:.3e})")]
    StarDescentFailure(f64),

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("inconsistent verdicts: {0}")]
    InconsistencyError(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("degree {degree} exceeds cutoff {cutoff}")]
    CutoffExceeded { degree: usize, cutoff: usize },

    #[error("rewrite system is not confluent on critical pair {0}")]
    NotConfluent(String),

    #[error("internal error: {0}")]
    InternalError(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
