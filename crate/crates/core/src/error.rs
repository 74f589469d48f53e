use thiserror::Error;

use crate::curvature::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {found} is too small, need at least {min}")]
    DimensionTooSmall { min: usize, found: usize },

    #[error("exponential of a polynomial with nonzero constant term")]
    NonzeroConstantTerm,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("variable index {index} out of range for dimension {dimension}")]
    VariableOutOfRange { index: usize, dimension: usize },

    #[error("invalid curvature tensor: {} violation(s), first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidTensor(Vec<Violation>),

    #[error("vectors do not span a 2-plane (Gram determinant is zero)")]
    DegenerateSpan,

    #[error("moment order {k} exceeds the degree budget {budget}")]
    DegreeBudgetExceeded { k: usize, budget: usize },

    #[error("spectral radius {radius} of 2tF is not below 1, generating series diverges")]
    SeriesDivergent { radius: f64 },

    #[error("need {needed} moments, only {available} available")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("linear system is inconsistent (residual {residual} in row {row})")]
    Inconsistent { row: usize, residual: String },

    #[error("value {value} lies outside the support [{lo}, {hi}]")]
    OutsideSupport { value: f64, lo: f64, hi: f64 },

    #[error("density is not normalized: total mass {mass}")]
    NotNormalized { mass: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
