//! Period sequence `Tₙ` forcing homotopically distinct orbits, and the
//! staircase lower bound `N_T ≥ #{n : Tₙ ≤ T}` it induces.
//!
//! `T_{n+1}` is the least `T` with `(1/a₂) ln T − c₂ ≥ a₁ ln((E/e) Tₙ) + c₁ + 1`,
//! so `ln T_{n+1} = a₃ ln Tₙ + b` with `a₃ = a₁a₂` and `b = a₂(a₁ ln(E/e) + c₁ + c₂ + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, LabError, Result};

/// Terms emitted before giving up on reaching `T_max`.
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSequenceParams {
    pub a1: f64,
    pub c1: f64,
    pub a2: f64,
    pub c2: f64,
    /// Supremum of the conformal factor.
    pub big_e: f64,
    /// Infimum of the conformal factor.
    pub small_e: f64,
}

impl BoundSequenceParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a1 > 0.0 && self.a2 > 0.0) {
            return Err(invalid("a1, a2", "must be positive"));
        }
        if !(self.small_e > 0.0 && self.big_e >= self.small_e) {
            return Err(invalid("E, e", "need E ≥ e > 0"));
        }
        if !(self.c1.is_finite() && self.c2.is_finite() && self.big_e.is_finite()) {
            return Err(invalid("c1, c2, E", "must be finite"));
        }
        Ok(())
    }

    pub fn a3(&self) -> f64 {
        self.a1 * self.a2
    }

    /// Additive constant `b` of the log recursion.
    pub fn offset(&self) -> f64 {
        self.a2 * (self.a1 * (self.big_e / self.small_e).ln() + self.c1 + self.c2 + 1.0)
    }

    /// `ln T_{n+1}` from `ln Tₙ`.
    pub fn step_log(&self, log_t: f64) -> f64 {
        self.a3() * log_t + self.offset()
    }
}

/// Closed-form lower bound below the staircase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerBound {
    /// `N_T ≥ (ln T − ln T₁)/b` when `a₃ = 1`.
    Logarithmic { log_t1: f64, offset: f64 },
    /// `N_T ≥ (1/ln a₃) ln ln T − c₆` when `a₃ > 1`.
    LogLog { a3: f64, c6: f64 },
}

impl LowerBound {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            LowerBound::Logarithmic { log_t1, offset } => (t.ln() - log_t1) / offset,
            LowerBound::LogLog { a3, c6 } => t.ln().ln() / a3.ln() - c6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSequence {
    /// `T₁ < T₂ < …`, all `≤ T_max`.
    pub terms: Vec<f64>,
    pub bound: LowerBound,
}

impl BoundSequence {
    /// Staircase value `#{n : Tₙ ≤ t}`.
    pub fn staircase(&self, t: f64) -> usize {
        self.terms.partition_point(|&tn| tn <= t)
    }
}

/// Iterates the recursion from the minimal period `t1` up to `t_max`.
pub fn homotopy_bound_sequence(params: &BoundSequenceParams, t1: f64, t_max: f64) -> Result<BoundSequence> {
    params.validate()?;
    if !(t1 > 1.0 && t_max >= t1 && t_max.is_finite()) {
        return Err(invalid("t1, t_max", "need 1 < T₁ ≤ T_max < ∞"));
    }
    let (a3, b, x1) = (params.a3(), params.offset(), t1.ln());
    let bound = if (a3 - 1.0).abs() <= 1e-15 {
        if !(b > 0.0) {
            return Err(LabError::Divergence { step: 0 });
        }
        LowerBound::Logarithmic { log_t1: x1, offset: b }
    } else if a3 > 1.0 {
        // x_{n+1} + β = a₃ⁿ(x₁ + β) with β = b/(a₃ − 1), so x_{n+1} ≤ a₃ⁿ(x₁ + max(β, 0))
        let beta = b / (a3 - 1.0);
        if !(x1 + beta > 0.0) {
            return Err(LabError::Divergence { step: 0 });
        }
        LowerBound::LogLog { a3, c6: (x1 + beta.max(0.0)).ln() / a3.ln() }
    } else {
        return Err(invalid("a1, a2", "a₁a₂ < 1 has a bounded sequence"));
    };
    let mut terms = vec![t1];
    let mut x = x1;
    let log_max = t_max.ln();
    for step in 1..MAX_TERMS {
        let next = params.step_log(x);
        if !(next > x) {
            return Err(LabError::Divergence { step });
        }
        if next > log_max {
            return Ok(BoundSequence { terms, bound });
        }
        x = next;
        terms.push(x.exp());
    }
    Err(LabError::BudgetExceeded { what: "bound-sequence terms", limit: MAX_TERMS })
}
