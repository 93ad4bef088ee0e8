//! Lyapunov–Lorentz forms `Q₀± = ±dw ds − c dt²` and `Q₁± = ±(dw ds − b(t) f′(w) dw²) − c dt²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::surgery::SurgeryConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LorentzKind {
    Q0Plus,
    Q0Minus,
    Q1Plus,
    Q1Minus,
}

impl LorentzKind {
    pub const ALL: [LorentzKind; 4] = [Self::Q0Plus, Self::Q0Minus, Self::Q1Plus, Self::Q1Minus];

    fn sign(self) -> f64 {
        match self {
            Self::Q0Plus | Self::Q1Plus => 1.0,
            Self::Q0Minus | Self::Q1Minus => -1.0,
        }
    }

    fn sheared(self) -> bool {
        matches!(self, Self::Q1Plus | Self::Q1Minus)
    }

    /// `Q₁±` partner of `Q₀±` and vice versa.
    pub fn partner(self) -> LorentzKind {
        match self {
            Self::Q0Plus => Self::Q1Plus,
            Self::Q0Minus => Self::Q1Minus,
            Self::Q1Plus => Self::Q0Plus,
            Self::Q1Minus => Self::Q0Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzForm {
    pub kind: LorentzKind,
    /// Constant with `Q(X) = −c`.
    pub c: f64,
}

impl LorentzForm {
    /// Value at a tangent vector `(dt, ds, dw)` based at `(t, ·, w)`.
    pub fn eval(&self, config: &SurgeryConfig, t: f64, w: f64, v: [f64; 3]) -> f64 {
        let [dt, ds, dw] = v;
        let mut plane = dw * ds;
        if self.kind.sheared() {
            plane -= config.deform.b.value(t) * config.twist.df(w) * dw * dw;
        }
        self.kind.sign() * plane - self.c * dt * dt
    }

    /// Restriction to the annulus plane, dropping `dt²`.
    pub fn eval_plane(&self, config: &SurgeryConfig, t: f64, w: f64, ds: f64, dw: f64) -> f64 {
        self.eval(config, t, w, [0.0, ds, dw])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PullbackReport {
    pub samples: usize,
    pub max_residual: f64,
    pub pass: bool,
}

/// Checks `F*Q₁± = Q₀±` on `t = 0` at seeded random points and tangent vectors.
pub fn lorentz_pullback_check(config: &SurgeryConfig, c: f64, n_samples: usize, seed: u64) -> PullbackReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = config.chart.epsilon;
    let mut max_residual: f64 = 0.0;
    for _ in 0..n_samples {
        let w = rng.gen_range(-eps..eps);
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let df = config.twist.df(w);
        let pushed = [v[0], v[1] + df * v[2], v[2]];
        for kind in [LorentzKind::Q0Plus, LorentzKind::Q0Minus] {
            let q0 = LorentzForm { kind, c };
            let q1 = LorentzForm { kind: kind.partner(), c };
            let r = (q1.eval(config, 0.0, w, pushed) - q0.eval(config, 0.0, w, v)).abs();
            max_residual = max_residual.max(r);
        }
    }
    PullbackReport {
        samples: n_samples,
        max_residual,
        pass: max_residual <= 1e-9,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::SurgeryParams;

    fn config(q: i64) -> SurgeryConfig {
        SurgeryConfig::new(SurgeryParams { q, ..Default::default() }).unwrap()
    }

    #[test]
    fn trivial_twist_is_exact() {
        let r = lorentz_pullback_check(&config(0), 1.0, 1000, 3);
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn pullback_holds_for_positive_and_negative_twists() {
        for q in [1, 3, -2] {
            let r = lorentz_pullback_check(&config(q), 0.5, 1000, 11);
            assert!(r.pass, "{q}: {r:?}");
        }
    }

    #[test]
    fn sheared_forms_degenerate_past_the_cutoff() {
        let cfg = config(2);
        for kind in [LorentzKind::Q1Plus, LorentzKind::Q1Minus] {
            let q1 = LorentzForm { kind, c: 1.0 };
            let q0 = LorentzForm { kind: kind.partner(), c: 1.0 };
            let v = [0.3, -0.2, 0.9];
            assert_eq!(q1.eval(&cfg, 1.0, 0.01, v), q0.eval(&cfg, 1.0, 0.01, v));
        }
    }

    #[test]
    fn flow_direction_is_timelike() {
        let cfg = config(1);
        for kind in LorentzKind::ALL {
            let q = LorentzForm { kind, c: 2.0 };
            assert_eq!(q.eval(&cfg, 0.2, 0.0, [1.0, 0.0, 0.0]), -2.0);
        }
    }
}
