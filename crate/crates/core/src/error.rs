use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} is not divisible by {sub_dim}")]
    NotDivisible { dim: usize, sub_dim: usize },

    #[error("expected a {expected}x{expected} matrix, got {actual}x{actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("matrix entries must number dim^2 = {expected}, got {actual}")]
    EntryCount { expected: usize, actual: usize },

    #[error("non-finite matrix entry at index {0}")]
    NonFinite(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator index {index} out of range for {n_strands} strands")]
    GeneratorOutOfRange { index: i32, n_strands: usize },

    #[error("strand index {index} out of range for {n_strands} strands")]
    StrandOutOfRange { index: usize, n_strands: usize },

    #[error("strand-count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("{what} exceeds the size guard ({value} > {limit})")]
    Guard { what: &'static str, value: usize, limit: usize },

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("zero vector")]
    ZeroVector,

    #[error("singular: {0}")]
    Singular(String),

    #[error("site {site} out of range for a word of length {len}")]
    BadSite { site: usize, len: usize },

    #[error("weights must be nonzero")]
    ZeroWeight,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("zero-probability branch")]
    ZeroProbability,

    #[error("internal consistency check failed: {0}")]
    SelfCheck(String),

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// True for size-guard violations (as opposed to bad input or failed checks).
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
