//! Summary of the entropy checks.

use serde::{Deserialize, Serialize};

use super::GrowthLabel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedLabel {
    pub table: String,
    pub label: GrowthLabel,
}

/// `lyapunov_min` certifies `h ≥ 1` through the Pesin formula; `entropy_fit` is
/// the census growth rate. The strict inequality is not claimed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub lyapunov_min: f64,
    pub entropy_fit: f64,
    pub growth_labels: Vec<NamedLabel>,
    pub bound_sequence: Vec<f64>,
}
