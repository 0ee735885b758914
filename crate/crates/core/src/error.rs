use thiserror::Error;

/// Errors raised by the operator constructions and verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size limit exceeded: {what} (limit {limit})")]
    SizeLimit { what: String, limit: usize },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid permutation images {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("kernel is not Hermitian at ({s}, {t})")]
    NotHermitian { s: usize, t: usize },

    #[error("kernel entry at ({s}, {t}) has modulus {modulus} > 1")]
    ModulusBound { s: usize, t: usize, modulus: f64 },

    #[error("kernel matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degree-{degree} component is not quasisymmetric (residual {residual:e})")]
    NotInRange { degree: usize, residual: f64 },

    #[error("truncation overflow: degree {degree} exceeds truncation {truncation}")]
    TruncationOverflow { degree: usize, truncation: usize },

    #[error("c_n is not constant along the S_n^1 orbit of tuple {tuple:?}")]
    OrbitInconsistency { tuple: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
