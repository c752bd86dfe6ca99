use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported field degree {0} (supported: 1..=32, sample spaces: 1..=16)")]
    UnsupportedDegree(u32),
    #[error("invalid test: {0}")]
    InvalidTest(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("stabilizer generators are linearly dependent")]
    DependentGenerators,
    #[error("stabilizer generators {0} and {1} anti-commute")]
    NotAbelian(usize, usize),
    #[error("stabilizer signs are inconsistent: the group stabilizes no state")]
    InconsistentSigns,
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
