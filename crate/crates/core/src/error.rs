use thiserror::Error;

/// Errors raised by the surgery laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("point outside the flow-box chart: |w| = {w} exceeds epsilon = {epsilon}")]
    OutOfChart { w: f64, epsilon: f64 },

    #[error("surface construction failed: relation residual {residual:e} exceeds {tolerance:e}")]
    ConstructionCheck { residual: f64, tolerance: f64 },

    #[error("time change is not well defined: sup |dh(X)| = {sup} >= {bound}")]
    TimeChangeViolation { sup: f64, bound: f64 },

    #[error("quadrature did not converge: panel-doubling disagreement {disagreement:e}")]
    QuadratureNonConvergence { disagreement: f64 },

    #[error("contact condition fails: margin {margin} <= 0 (epsilon too large)")]
    ContactMargin { margin: f64 },

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("twist profile is not strictly monotone on (-epsilon, epsilon)")]
    NonMonotoneProfile,

    #[error("tangent vector left the cone at step {step}")]
    ConeExit { step: usize },

    #[error("nonpositive mean of the time-change factor: {0}")]
    NonPositiveMean(f64),

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("geometric consistency check failed: {0}")]
    Geometry(String),

    #[error("geodesic walk lost the axis at step {step}")]
    WalkLost { step: usize },

    #[error("recursion diverged before reaching T_max at step {step}")]
    Divergence { step: usize },
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> LabError {
    LabError::InvalidParameter {
        field,
        reason: reason.into(),
    }
}
