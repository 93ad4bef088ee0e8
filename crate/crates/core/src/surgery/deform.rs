//! Contact deformation `h = ½ λ(t) ∫_{−ε}^{w} x f′(x) dx` and the Reeb time change.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SurgeryConfig, TwistProfile};
use crate::error::{LabError, Result};
use crate::quadrature;

/// Panels for the moment integral `∫ x f′`.
pub const MOMENT_PANELS: usize = 512;

const NORMALIZATION_TOL: f64 = 1e-8;
const NORMALIZATION_MAX_PANELS: usize = 256;

/// `I(w) = ∫_{−ε}^{w} x f′(x) dx`, clamped to the chart.
pub fn twist_moment(w: f64, twist: &TwistProfile) -> f64 {
    let eps = twist.epsilon;
    let w = w.clamp(-eps, eps);
    if w == -eps || twist.q == 0 {
        return 0.0;
    }
    quadrature::composite(|x| x * twist.df(x), -eps, w, MOMENT_PANELS)
}

pub fn deformation_h(t: f64, w: f64, config: &SurgeryConfig) -> f64 {
    if !config.chart.contains(t, w) {
        return 0.0;
    }
    0.5 * config.deform.lambda.value(t) * twist_moment(w, &config.twist)
}

/// `∂h/∂t = dh(X_HT)`.
pub fn dh_along_flow(t: f64, w: f64, config: &SurgeryConfig) -> f64 {
    let dl = config.deform.lambda.derivative(t);
    if dl == 0.0 || !config.chart.contains(t, w) {
        return 0.0;
    }
    0.5 * dl * twist_moment(w, &config.twist)
}

/// `∂h/∂w = ½ λ(t) w f′(w)`.
pub fn dh_transverse(t: f64, w: f64, config: &SurgeryConfig) -> f64 {
    if !config.chart.contains(t, w) {
        return 0.0;
    }
    0.5 * config.deform.lambda.value(t) * w * config.twist.df(w)
}

fn factor_from(t: f64, dh: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 - dh)
    } else {
        1.0 / (1.0 + dh)
    }
}

/// Reeb time-change factor `1/(1 ∓ dh(X_HT))` for `±t ≥ 0`; 1 outside the box.
pub fn reeb_factor(t: f64, w: f64, config: &SurgeryConfig) -> Result<f64> {
    let dh = dh_along_flow(t, w, config);
    let bound = config.time_change_bound();
    if dh.abs() >= bound {
        return Err(LabError::TimeChangeViolation { sup: dh.abs(), bound });
    }
    Ok(factor_from(t, dh))
}

/// `sup |dh(X_HT)|` over an `n × n` grid of the closed box; fails at or above the bound.
pub fn time_change_sup(config: &SurgeryConfig, n: usize) -> Result<f64> {
    let n = n.max(2);
    let (eta, eps) = (config.chart.eta, config.chart.epsilon);
    let sup = (0..n)
        .into_par_iter()
        .map(|j| {
            let w = -eps + 2.0 * eps * j as f64 / (n - 1) as f64;
            let moment = twist_moment(w, &config.twist).abs();
            (0..n)
                .map(|i| {
                    let t = -eta + 2.0 * eta * i as f64 / (n - 1) as f64;
                    0.5 * config.deform.lambda.derivative(t).abs() * moment
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let bound = config.time_change_bound();
    if sup >= bound {
        return Err(LabError::TimeChangeViolation { sup, bound });
    }
    Ok(sup)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub c: f64,
    /// Box average of `factor − 1`.
    pub box_excess: f64,
    pub box_mass: f64,
    pub panels: usize,
    /// `c · mean − 1`.
    pub identity_residual: f64,
}

/// Box average of `factor − 1` with `panels` per axis; `panels` even so `t = 0`
/// is a panel edge (the factor has a kink there).
fn box_excess(config: &SurgeryConfig, panels: usize) -> f64 {
    let (eta, eps) = (config.chart.eta, config.chart.epsilon);
    let lambda = config.deform.lambda;
    let integral = quadrature::composite(
        |w| {
            let moment = twist_moment(w, &config.twist);
            quadrature::composite(
                |t| factor_from(t, 0.5 * lambda.derivative(t) * moment) - 1.0,
                -eta,
                eta,
                panels,
            )
        },
        -eps,
        eps,
        panels,
    );
    integral / config.chart.volume()
}

/// Constant `c` with `∫ c·factor dμ = 1` for the Liouville probability `μ`.
pub fn normalization_constant(config: &SurgeryConfig) -> Result<NormalizationReport> {
    time_change_sup(config, 200)?;
    let (excess, panels) = quadrature::until_converged(
        |n| box_excess(config, 2 * n),
        4,
        NORMALIZATION_MAX_PANELS,
        NORMALIZATION_TOL,
    )?;
    let mean = 1.0 + config.box_mass * excess;
    if !(mean > 0.0) {
        return Err(LabError::NonPositiveMean(mean));
    }
    let c = 1.0 / mean;
    Ok(NormalizationReport {
        c,
        box_excess: excess,
        box_mass: config.box_mass,
        panels: 2 * panels,
        identity_residual: c * mean - 1.0,
    })
}
