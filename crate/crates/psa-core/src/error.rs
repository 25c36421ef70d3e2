use thiserror::Error;

use crate::rational::Q;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k}); defect {defect:?}")]
    JacobiViolation { i: usize, j: usize, k: usize, defect: Vec<Q> },
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },
    #[error("trace form does not vanish on [d,d]: pair ({i}, {j})")]
    TraceFormInvalid { i: usize, j: usize },
    #[error("representation invalid: {0}")]
    RepInvalid(String),
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("truncation exceeded: need degree {needed}, validity is {validity}")]
    TruncationExceeded { needed: usize, validity: usize },
    #[error("element is not in W_0")]
    NotInW0,
    #[error("linear solve failed: {0}")]
    SolveFailed(String),
    #[error("dimension {0} too small: S-type computations need dim d >= 3")]
    DimensionTooSmall(usize),
    #[error("module is not free on a finite generator set")]
    NotFree,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
