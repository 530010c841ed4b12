use thiserror::Error;

/// Errors raised by the measure pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension {0} is not supported (expected 2, 4 or 8)")]
    UnsupportedDimension(usize),

    #[error("tensor product of dimensions {left} and {right} exceeds 8")]
    DimensionOverflow { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid party set {0} for a {1}-qubit operator")]
    InvalidPartySet(String, usize),

    #[error("matrix is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace {0} differs from 1")]
    NotUnitTrace(f64),

    #[error("{name} = {value} is outside {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("state vector has zero norm")]
    ZeroVector,

    #[error("state norm {0} is not within tolerance of 1")]
    NotNormalized(f64),

    #[error("discord evaluated to {0:e} bits; measurement optimization failed")]
    NegativeDiscord(f64),

    #[error("sampler rejected {0} consecutive draws")]
    ResampleLimit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
