use thiserror::Error;

pub type Result<T, E = PgstError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PgstError {
    #[error("a path needs at least one vertex (got n = {0})")]
    EmptyPath(usize),

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("eigenvalue index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("precision of {0} bits is below the 64-bit minimum")]
    InsufficientPrecision(usize),

    #[error("invalid precision setting {0:?}")]
    BadPrecisionSetting(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("time must be finite and non-negative (got {0})")]
    InvalidTime(f64),

    #[error("enumeration of {candidates} candidates exceeds the limit of {limit}")]
    EnumerationTooLarge { candidates: u128, limit: u128 },

    #[error("coefficient bound must be at least 1")]
    ZeroBound,

    #[error("relation vector has length {got}, the support has {expected} indices")]
    IndexMismatch { expected: usize, got: usize },

    #[error("end-vertex rule needs n >= 2 (got {0})")]
    EndRuleDomain(usize),

    #[error("n = {n}, a = {a} is not covered by the 2^t p - 1 family")]
    NotTheoremFamily { n: usize, a: usize },

    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
