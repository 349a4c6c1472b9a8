use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails for basis triple ({i}, {j}, {k}); residual {residual:?}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<String>,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a complex structure: J^2 != -I")]
    NotAComplexStructure,

    #[error("Bianchi type must be in 1..=8, got {0}")]
    InvalidType(u8),

    #[error("type ({0}) requires a theta parameter")]
    ThetaRequired(u8),

    #[error("type ({0}) does not take a theta parameter")]
    ThetaForbidden(u8),

    #[error("theta must be nonzero")]
    ThetaZero,

    #[error("Jordan triple does not satisfy its bracket relations")]
    InvalidJordanTriple,

    #[error("vectors u, v, w are linearly dependent")]
    SingularBasis,

    #[error("no integrable complex structure on g x g for type {label}: {reason}")]
    NoKnownStructure { label: String, reason: String },

    #[error("o(n) requires n >= 2, got {0}")]
    InvalidN(usize),

    #[error("inconsistent fixing of unknown {index}")]
    InconsistentFixing { index: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
