//! Lower bound `λ ≥ 1` for the Lyapunov exponents of twisted return sequences.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cocycle::{lyapunov_estimate, AnnulusTangent, ReturnSequence, SamplerSpec};
use crate::error::{invalid, Result};
use crate::surgery::TwistProfile;

/// Allowed shortfall below 1 for `q ≥ 0`.
pub const EXPONENT_FLOOR_TOL: f64 = 1e-6;

/// Allowed deviation from 1 when no crossing shears.
pub const NO_CROSSING_TOL: f64 = 1e-9;

/// Outcome of the `λ ≥ 1` check over an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PesinReport {
    pub q: i64,
    pub sequences: usize,
    pub min_exponent: f64,
    pub max_exponent: f64,
    /// Master seed and stream index of the smallest exponent.
    pub worst: (u64, u64),
    /// `q < 0` ensembles carry no lower bound and always pass.
    pub pass: bool,
}

/// Whether one exponent respects the bound: `λ ≥ 1 − 1e−6` for `q ≥ 0`, and
/// `|λ − 1| ≤ 1e−9` when the sequence never shears.
pub fn pesin_consistency(exponent: f64, q: i64, shear_free: bool) -> bool {
    if shear_free {
        (exponent - 1.0).abs() <= NO_CROSSING_TOL
    } else {
        q < 0 || exponent >= 1.0 - EXPONENT_FLOOR_TOL
    }
}

/// Lyapunov estimates of `n` sampled sequences from the cone axis `e⁺`.
pub fn pesin_ensemble(twist: &TwistProfile, spec: &SamplerSpec, n: usize, seed: u64) -> Result<PesinReport> {
    if n == 0 {
        return Err(invalid("n", "ensemble must be nonempty"));
    }
    let estimates = (0..n as u64)
        .into_par_iter()
        .map(|index| {
            let seq = ReturnSequence::sample(spec, twist.epsilon, seed, index)?;
            let shear_free = seq.steps.iter().all(|&(_, w)| twist.df(w) == 0.0);
            let est = lyapunov_estimate(&seq, twist, AnnulusTangent::new(1.0, 0.0))?;
            Ok((index, est.exponent, shear_free))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = PesinReport {
        q: twist.q,
        sequences: n,
        min_exponent: f64::INFINITY,
        max_exponent: f64::NEG_INFINITY,
        worst: (seed, 0),
        pass: true,
    };
    for (index, exponent, shear_free) in estimates {
        if exponent < report.min_exponent {
            report.min_exponent = exponent;
            report.worst = (seed, index);
        }
        report.max_exponent = report.max_exponent.max(exponent);
        report.pass &= pesin_consistency(exponent, twist.q, shear_free);
    }
    Ok(report)
}
