//! Surgery data in flow-box coordinates `(t, s, w)` with contact form `α = dt + w ds`.

mod beta0;
mod deform;
pub mod forms;
mod identities;
mod profile;

pub use beta0::{beta0_build, Beta0};
pub use deform::{
    deformation_h, dh_along_flow, normalization_constant, reeb_factor, time_change_sup,
    twist_moment, NormalizationReport,
};
pub use identities::{gluing_identity_check, IdentityReport};
pub use profile::{
    Bump, Cutoff, DeformationProfile, PlateauParams, PlateauProfile, SmoothStep, TwistProfile,
};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, LabError, Result};

/// Liouville volume `∫ α₀ ∧ dα₀` of the unit tangent bundle of a genus-2 surface.
pub const TOTAL_VOLUME: f64 = 8.0 * PI * PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowBoxChart {
    pub eta: f64,
    pub epsilon: f64,
}

impl FlowBoxChart {
    /// Requires `0 < ε < η/2π`.
    pub fn new(eta: f64, epsilon: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(invalid("eta", "must be positive and finite"));
        }
        if !(epsilon > 0.0) || epsilon >= eta / (2.0 * PI) {
            return Err(invalid("epsilon", format!("need 0 < epsilon < eta/2pi = {}", eta / (2.0 * PI))));
        }
        Ok(FlowBoxChart { eta, epsilon })
    }

    pub fn contains(&self, t: f64, w: f64) -> bool {
        t.abs() < self.eta && w.abs() < self.epsilon
    }

    /// `∫_box α ∧ dα = 2η · 1 · 2ε`.
    pub fn volume(&self) -> f64 {
        4.0 * self.eta * self.epsilon
    }
}

/// Serialized form of [`SurgeryConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SurgeryParams {
    pub q: i64,
    pub epsilon: f64,
    pub eta: f64,
    pub strict_half_bound: bool,
    #[serde(flatten)]
    pub profile: PlateauParams,
    pub lambda_radius_fraction: f64,
    /// Liouville probability of the box; `None` means box volume over total volume.
    pub box_mass: Option<f64>,
}

impl Default for SurgeryParams {
    fn default() -> Self {
        SurgeryParams {
            q: 1,
            epsilon: 0.05,
            eta: 1.0,
            strict_half_bound: false,
            profile: PlateauParams::default(),
            lambda_radius_fraction: 0.9,
            box_mass: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurgeryConfig {
    pub chart: FlowBoxChart,
    pub twist: TwistProfile,
    pub deform: DeformationProfile,
    pub strict_half_bound: bool,
    pub box_mass: f64,
    lambda_fraction: f64,
}

impl SurgeryConfig {
    pub fn new(params: SurgeryParams) -> Result<Self> {
        let chart = FlowBoxChart::new(params.eta, params.epsilon)?;
        let twist = TwistProfile::new(params.q, params.epsilon, params.profile)?;
        let deform = DeformationProfile::new(params.eta, params.lambda_radius_fraction)?;
        let box_mass = match params.box_mass {
            Some(m) if m > 0.0 && m < 1.0 => m,
            Some(_) => return Err(invalid("box_mass", "must lie in (0, 1)")),
            None => chart.volume() / TOTAL_VOLUME,
        };
        let cfg = SurgeryConfig {
            chart,
            twist,
            deform,
            strict_half_bound: params.strict_half_bound,
            box_mass,
            lambda_fraction: params.lambda_radius_fraction,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.chart.epsilon != self.twist.epsilon {
            return Err(invalid("epsilon", "chart and twist disagree"));
        }
        if self.deform.b.eta != self.chart.eta || self.deform.lambda.radius >= self.chart.eta {
            return Err(invalid("eta", "deformation profile does not fit the chart"));
        }
        Ok(())
    }

    pub fn params(&self) -> SurgeryParams {
        SurgeryParams {
            q: self.twist.q,
            epsilon: self.chart.epsilon,
            eta: self.chart.eta,
            strict_half_bound: self.strict_half_bound,
            profile: self.twist.g.params(),
            lambda_radius_fraction: self.lambda_fraction,
            box_mass: Some(self.box_mass),
        }
    }

    pub fn time_change_bound(&self) -> f64 {
        if self.strict_half_bound {
            0.5
        } else {
            1.0
        }
    }
}

/// Gluing map `F(s, w) = (s + f(w) mod 1, w)`.
pub fn glue_map(s: f64, w: f64, twist: &TwistProfile) -> Result<(f64, f64)> {
    if w.abs() > twist.epsilon {
        return Err(LabError::OutOfChart { w: w.abs(), epsilon: twist.epsilon });
    }
    Ok(((s + twist.f(w)).rem_euclid(1.0), w))
}

/// Differential of [`glue_map`] in `(s, w)`; unipotent.
pub fn glue_differential(w: f64, twist: &TwistProfile) -> [[f64; 2]; 2] {
    [[1.0, twist.df(w)], [0.0, 1.0]]
}
