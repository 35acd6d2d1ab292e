use thiserror::Error;

/// Errors reported by the field, matrix and product routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range [2, 2^31)")]
    ModulusOutOfRange(u64),
    #[error("operation requires an odd characteristic")]
    CharacteristicTwo,
    #[error("extension degree {0} is outside the supported range [1, 16]")]
    DegreeOutOfRange(u32),
    #[error("element has no square root in this field")]
    NonResidue,
    #[error("expected a quadratic non-residue")]
    NotNonResidue,
    #[error("pair-form skew-orthogonal matrix needs an even dimension, got {0}")]
    DimensionParity(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("malformed scaling block: {0}")]
    MalformedBlock(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
