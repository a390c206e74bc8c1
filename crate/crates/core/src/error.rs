use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("grid mismatch: operands are defined over different variable grids")]
    GridMismatch,
    #[error("zero divisor in division list (position {0})")]
    ZeroDivisor(usize),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree {degree} out of range for this operation (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("resource ceiling exceeded: {0}")]
    Ceiling(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("candidate at index {index} does not annihilate the target: {detail}")]
    CandidateNotApolar { index: usize, detail: String },
    #[error("generating degree {0} has not been certified")]
    UncertifiedDegree(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
