use num_complex::Complex64;
use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation produced a non-finite value at {point:?}")]
    EvaluationFailure { point: Vec<Complex64> },

    #[error("expansion did not converge: residual {residual:e} exceeds budget {budget:e}")]
    NonConvergedExpansion { residual: f64, budget: f64 },

    #[error("function is not zero at the base point: |f| = {value:e}")]
    NonzeroAtBasePoint { value: f64 },

    #[error("basis has no constant member at index 0")]
    NoConstantMember,

    #[error(
        "no domination radius below the cap: worst ratio {worst_ratio:e} at member {worst_index}"
    )]
    NoDominationRadius { worst_index: usize, worst_ratio: f64 },

    #[error("LP solver failed: {0}")]
    LpFailure(String),

    #[error(
        "no admissible ellipse parameter up to {rho_max}: corpus member {worst_index} still violates"
    )]
    NoAdmissibleRho { rho_max: f64, worst_index: usize },

    #[error("exhaustion exhausted after {checked} domains; best grid max {best:e} > {target:e}")]
    ExhaustionExhausted {
        checked: usize,
        best: f64,
        target: f64,
    },

    #[error("gamma curve is not non-increasing at index {index}: {prev} -> {next}")]
    NonMonotoneCurve { index: usize, prev: f64, next: f64 },

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
