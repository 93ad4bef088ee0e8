//! Growth-type classification of cumulative count tables.
//!
//! Both fits are linear regressions of `log N`, against `T` and against `log T`.
//! Rescaling `T → T/C` scales the first abscissa and shifts the second, so both
//! residual sums, and with them the label, are unchanged.

use serde::{Deserialize, Serialize};

use crate::census::{CensusTable, LinearFit};
use crate::error::{LabError, Result};

pub const MIN_BUCKETS: usize = 8;

/// A fit wins when its summed squared residual is smaller by this factor.
pub const SSR_MARGIN: f64 = 2.0;

/// Normal 95% quantile for the slope intervals.
const Z95: f64 = 1.96;

/// Residual sums per point below this count as exact.
const EXACT_SSR: f64 = 1e-20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthKind {
    Polynomial { degree: f64, ci: (f64, f64) },
    Exponential { rate: f64, ci: (f64, f64) },
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthLabel {
    pub kind: GrowthKind,
    /// `log N` against `T`.
    pub exponential: LinearFit,
    /// `log N` against `log T`.
    pub polynomial: LinearFit,
}

impl GrowthLabel {
    /// Same kind, ignoring the fitted values.
    pub fn same_kind(&self, other: &GrowthLabel) -> bool {
        std::mem::discriminant(&self.kind) == std::mem::discriminant(&other.kind)
    }
}

fn interval(fit: &LinearFit) -> (f64, f64) {
    (fit.slope - Z95 * fit.slope_stderr, fit.slope + Z95 * fit.slope_stderr)
}

/// Labels a table polynomial or exponential by comparing the two fits over its
/// buckets with positive count.
pub fn growth_type_classify(table: &CensusTable) -> Result<GrowthLabel> {
    let edges = &table.edges;
    if edges.len() < MIN_BUCKETS {
        return Err(LabError::InsufficientData(format!("{} buckets, need {MIN_BUCKETS}", edges.len())));
    }
    let (lo, hi) = (edges[0], edges[edges.len() - 1]);
    if !(lo > 0.0 && hi >= 10.0 * lo * (1.0 - 1e-12)) {
        return Err(LabError::InsufficientData(format!("buckets span [{lo}, {hi}], need a decade")));
    }
    let exponential = table.exponential_fit(lo, hi)?;
    let polynomial = table.polynomial_fit(lo, hi)?;
    let floor = EXACT_SSR * exponential.points as f64;
    let (se, sp) = (exponential.ssr.max(floor), polynomial.ssr.max(floor));
    let kind = if sp * SSR_MARGIN <= se {
        GrowthKind::Polynomial { degree: polynomial.slope, ci: interval(&polynomial) }
    } else if se * SSR_MARGIN <= sp {
        GrowthKind::Exponential { rate: exponential.slope, ci: interval(&exponential) }
    } else if se == floor && sp == floor && polynomial.slope.abs() <= 1e-12 {
        // a constant table is a polynomial of degree 0
        GrowthKind::Polynomial { degree: 0.0, ci: (0.0, 0.0) }
    } else {
        GrowthKind::Indeterminate
    };
    Ok(GrowthLabel { kind, exponential, polynomial })
}
