use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dataset must have at least one row and one column")]
    EmptyDataset,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("row {0} violates the feature norm bound")]
    RowNormViolation(usize),
    #[error("label {0} is not +1 or -1")]
    BadLabel(usize),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid norm exponent {0}: must lie in [2, inf)")]
    BadNormExponent(f64),
    #[error("certificate invalid: {0}")]
    BadCertificate(String),
    #[error("normalized margin undefined for the zero vector")]
    ZeroVector,
    #[error("point is not on the simplex")]
    NotOnSimplex,
    #[error("degenerate simplex iterate: coordinate {0} is zero")]
    Degenerate(usize),
    #[error("no closed-form comparator for this geometry: {0}")]
    UnsupportedGeometry(String),
    #[error("incompatible configuration: {0}")]
    IncompatibleConfig(String),
    #[error("non-finite iterate at round {0}")]
    NonFiniteIterate(usize),
    #[error("trace does not carry per-round iterates (record_full_trace = false)")]
    TraceNotRecorded,
    #[error("rejection sampling stalled after {0} draws")]
    RejectionBudget(usize),
    #[error("invalid generator spec: {0}")]
    BadSpec(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
