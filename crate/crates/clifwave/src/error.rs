//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported algebra dimension {0}, only n=2 and n=3 are implemented")]
    InvalidDimension(usize),
    #[error("operands belong to different algebras")]
    DimensionMismatch,
    #[error("fields are sampled on different grids")]
    GridMismatch,
    #[error("grid points per axis must be a power of two, got {0}")]
    InvalidGridSize(usize),
    #[error("grid half-width must be positive, got {0}")]
    InvalidHalfWidth(f64),
    #[error("multivector is not invertible: <C>_0^2 - <C>_1^2 = {0:e}")]
    NonInvertible(f64),
    #[error("inversion requires grades {{0,1}} only, found grade-{0} content {1:e}")]
    UnsupportedGrades(usize, f64),
    #[error("wavelet is not admissible: {0}")]
    NotAdmissible(String),
    #[error("non-finite sample at node {0}")]
    NonFiniteSample(usize),
    #[error("zero field has no uncertainty ratio")]
    ZeroField,
    #[error("slice index out of range: scale {0}, angle {1}")]
    SliceOutOfRange(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bad file format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
