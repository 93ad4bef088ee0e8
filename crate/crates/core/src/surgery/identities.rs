//! Gluing identities for `F(t, s, w) = (t, s + f(w), w)` checked by exact pullback.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::deform::{dh_along_flow, dh_transverse};
use super::forms::{contact_differential, contact_form, Jacobian, OneForm};
use super::SurgeryConfig;

pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub samples: usize,
    /// `F*α − α − w f′ dw`.
    pub contact_shift: f64,
    /// `F*dα − dα`.
    pub differential: f64,
    /// `F*(α∧dα) − α∧dα`.
    pub volume: f64,
    /// `F*(α − dh) − (α + dh)` on `t = 0`.
    pub deformed: f64,
    /// `dh − ½ w f′ dw` on `t = 0`.
    pub annulus_dh: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        [self.contact_shift, self.differential, self.volume, self.deformed, self.annulus_dh]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn jacobian(df: f64) -> Jacobian {
    [[1.0, 0.0, 0.0], [0.0, 1.0, df], [0.0, 0.0, 1.0]]
}

/// Checks the identities at `n_samples` seeded random heights `w`; the forms
/// involved do not depend on `t` or `s`.
pub fn gluing_identity_check(config: &SurgeryConfig, n_samples: usize, seed: u64) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = config.chart.epsilon;
    let mut r = IdentityReport {
        samples: n_samples,
        contact_shift: 0.0,
        differential: 0.0,
        volume: 0.0,
        deformed: 0.0,
        annulus_dh: 0.0,
        pass: true,
    };
    let d_alpha = contact_differential();
    for _ in 0..n_samples {
        let w = rng.gen_range(-eps..eps);
        let df = config.twist.df(w);
        let j = jacobian(df);
        // F preserves w, so α at the image has the same coefficients
        let alpha = contact_form(w);
        let pulled = alpha.pullback(&j);
        let expected = alpha.add(&OneForm([0.0, 0.0, w * df]));
        r.contact_shift = r.contact_shift.max(pulled.sub(&expected).max_abs());
        r.differential = r.differential.max(d_alpha.pullback(&j).sub(&d_alpha).max_abs());
        let vol = alpha.wedge2(&d_alpha);
        let vol_pulled = pulled.wedge2(&d_alpha.pullback(&j));
        r.volume = r
            .volume
            .max((vol_pulled.0 - vol.0).abs())
            .max((vol.pullback(&j).0 - vol.0).abs());

        let dh = OneForm([dh_along_flow(0.0, w, config), 0.0, dh_transverse(0.0, w, config)]);
        let lhs = alpha.sub(&dh).pullback(&j);
        let rhs = alpha.add(&dh);
        r.deformed = r.deformed.max(lhs.sub(&rhs).max_abs());
        r.annulus_dh = r
            .annulus_dh
            .max(dh.sub(&OneForm([0.0, 0.0, 0.5 * w * df])).max_abs());
    }
    r.pass = r.max_residual() <= IDENTITY_TOL;
    r
}

#[cfg(test)]
mod tests {
    use super::super::{SurgeryConfig, SurgeryParams};
    use super::*;

    #[test]
    fn trivial_twist_is_exact() {
        let cfg = SurgeryConfig::new(SurgeryParams { q: 0, ..Default::default() }).unwrap();
        let r = gluing_identity_check(&cfg, 200, 1);
        assert_eq!(r.max_residual(), 0.0);
        assert!(r.pass);
    }

    #[test]
    fn identities_hold_for_nontrivial_twists() {
        for q in [1, -1, 5] {
            let cfg = SurgeryConfig::new(SurgeryParams { q, ..Default::default() }).unwrap();
            let r = gluing_identity_check(&cfg, 1000, 7);
            assert!(r.pass, "{q}: {r:?}");
        }
    }

    #[test]
    fn opposite_orientation_fails() {
        // F*(α + dh) ≠ α − dh once the twist is nontrivial
        let cfg = SurgeryConfig::new(SurgeryParams { q: 1, ..Default::default() }).unwrap();
        let w = 0.02;
        let df = cfg.twist.df(w);
        let dh = OneForm([0.0, 0.0, 0.5 * w * df]);
        let lhs = contact_form(w).add(&dh).pullback(&jacobian(df));
        let rhs = contact_form(w).sub(&dh);
        assert!(lhs.sub(&rhs).max_abs() > 1e-3);
    }
}
