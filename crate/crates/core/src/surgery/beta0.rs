//! Fiber-flow form `β₀ = h₀(w) dτ + k₀(w) dσ` on the surgered collar `|w| < 2ε`.

use std::f64::consts::PI;

use super::TwistProfile;
use crate::error::{invalid, LabError, Result};
use crate::quadrature;

const MARGIN_GRID: usize = 4001;
/// Cells of the cumulative table of `∫f` over `[−ε, ε]`.
const PRIMITIVE_CELLS: usize = 4096;

#[derive(Debug, Clone)]
pub struct Beta0 {
    pub twist: TwistProfile,
    pub contact_margin: f64,
    pub max_d: f64,
    /// `∫_{−ε}^{−ε + i·cell} f` for `i = 0..=PRIMITIVE_CELLS`.
    primitive: Vec<f64>,
}

/// Builds `β₀` with `k₀(w) = w` and `h₀(w) = 1 + (1/2π)∫_{−2ε}^{w} f`.
pub fn beta0_build(twist: &TwistProfile, epsilon: f64) -> Result<Beta0> {
    if epsilon != twist.epsilon {
        return Err(invalid("epsilon", "twist profile uses a different epsilon"));
    }
    let mut b = Beta0 {
        twist: twist.clone(),
        contact_margin: f64::INFINITY,
        max_d: f64::NEG_INFINITY,
        primitive: Vec::with_capacity(PRIMITIVE_CELLS + 1),
    };
    let pcell = 2.0 * epsilon / PRIMITIVE_CELLS as f64;
    let mut acc = 0.0;
    b.primitive.push(0.0);
    for i in 0..PRIMITIVE_CELLS {
        let lo = -epsilon + pcell * i as f64;
        acc += quadrature::composite(|x| twist.f(x), lo, lo + pcell, 1);
        b.primitive.push(acc);
    }
    // D′ = −w f′/2π, so extrema sit at w = 0 or the collar ends; the grid contains both.
    // h₀ is accumulated cell by cell, one Gauss panel per cell.
    let cell = 4.0 * epsilon / (MARGIN_GRID - 1) as f64;
    let mut integral = 0.0;
    for i in 0..MARGIN_GRID {
        let w = -2.0 * epsilon + cell * i as f64;
        if i > 0 {
            integral += quadrature::composite(|x| twist.f(x), w - cell, w, 1);
        }
        let d = 1.0 + integral / (2.0 * PI) - w * twist.f(w) / (2.0 * PI);
        b.contact_margin = b.contact_margin.min(d);
        b.max_d = b.max_d.max(d);
    }
    if b.contact_margin <= 0.0 {
        return Err(LabError::ContactMargin { margin: b.contact_margin });
    }
    Ok(b)
}

impl Beta0 {
    pub fn epsilon(&self) -> f64 {
        self.twist.epsilon
    }

    pub fn k0(&self, w: f64) -> f64 {
        w
    }

    pub fn h0(&self, w: f64) -> f64 {
        let eps = self.twist.epsilon;
        let inner = w.clamp(-eps, eps);
        let pcell = 2.0 * eps / PRIMITIVE_CELLS as f64;
        let i = (((inner + eps) / pcell).floor() as usize).min(PRIMITIVE_CELLS - 1);
        let lo = -eps + pcell * i as f64;
        let mut integral = self.primitive[i];
        if inner > lo {
            integral += quadrature::composite(|x| self.twist.f(x), lo, inner, 1);
        }
        if w > eps {
            integral += self.twist.q as f64 * (w - eps);
        }
        1.0 + integral / (2.0 * PI)
    }

    /// `D = h₀ k₀′ − k₀ h₀′`, positive iff `β₀` is contact.
    pub fn d(&self, w: f64) -> f64 {
        self.h0(w) - w * self.twist.f(w) / (2.0 * PI)
    }

    /// Reeb direction in `(τ, σ)`, normalized by `β₀(R) = 1`.
    pub fn reeb(&self, w: f64) -> (f64, f64) {
        let d = self.d(w);
        (1.0 / d, -self.twist.f(w) / (2.0 * PI * d))
    }

    /// Period `2π q_w D(w)` of the closed Reeb orbits on the torus where `f(w) = p/q_w`.
    pub fn period(&self, w: f64, q_w: u64) -> f64 {
        2.0 * PI * q_w as f64 * self.d(w)
    }

    /// `C_P = 2π·max(D, 1/D)` over the collar.
    pub fn period_constant(&self) -> f64 {
        2.0 * PI * self.max_d.max(1.0 / self.contact_margin)
    }

    /// First return time of the Reeb flow at height `w` to its starting point,
    /// by RK4 integration of the Reeb field; `None` within `max_laps` fiber turns.
    pub fn reeb_closure_time(&self, w: f64, max_laps: u64, steps_per_lap: usize, tol: f64) -> Option<f64> {
        let (vt, vs) = self.reeb(w);
        let field = |_: (f64, f64)| (vt, vs);
        let dt = 2.0 * PI * self.d(w) / steps_per_lap as f64;
        let (mut tau, mut sigma, mut time) = (0.0_f64, 0.0_f64, 0.0_f64);
        let mut lap = 1;
        while lap <= max_laps {
            let k1 = field((tau, sigma));
            let k2 = field((tau + 0.5 * dt * k1.0, sigma + 0.5 * dt * k1.1));
            let k3 = field((tau + 0.5 * dt * k2.0, sigma + 0.5 * dt * k2.1));
            let k4 = field((tau + dt * k3.0, sigma + dt * k3.1));
            let ntau = tau + dt * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0) / 6.0;
            let nsigma = sigma + dt * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1) / 6.0;
            let target = 2.0 * PI * lap as f64;
            if ntau >= target {
                let frac = (target - tau) / (ntau - tau);
                let hit_sigma = sigma + frac * (nsigma - sigma);
                let hit_time = time + frac * dt;
                if (hit_sigma - hit_sigma.round()).abs() <= tol {
                    return Some(hit_time);
                }
                lap += 1;
            }
            tau = ntau;
            sigma = nsigma;
            time += dt;
        }
        None
    }
}
