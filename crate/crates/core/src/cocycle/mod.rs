//! Return-map cocycle at the surgery annulus in the `(e⁺, e⁻)` plane.
//!
//! A tangent vector `a e⁺ + b e⁻` has `(s, w)` components `((a − b)/√2, (a + b)/√2)`.
//! Between crossings the geodesic flow acts by `(a, b) ↦ (a eᵗ, b e⁻ᵗ)`; at a
//! crossing with parameter `w` the gluing shear `ds ↦ ds + f′(w) dw` acts.

mod certificate;
mod lorentz;
mod sequence;
mod sweep;

pub use certificate::{
    anosov_certificate, cone_flip_detector, in_flipped_half_cone, lyapunov_estimate,
    remark_cross_check, CertificateOutcome, FlipReport, LyapunovEstimate, RemarkCheck,
};
pub use lorentz::{lorentz_pullback_check, LorentzForm, LorentzKind, PullbackReport};
pub use sequence::{ReturnSequence, SamplerKind, SamplerSpec};
pub use sweep::{sweep, SweepRow, SweepSpec, Verdict};

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusTangent {
    pub a: f64,
    pub b: f64,
}

impl AnnulusTangent {
    pub fn new(a: f64, b: f64) -> Self {
        AnnulusTangent { a, b }
    }

    pub fn from_sw(s: f64, w: f64) -> Self {
        AnnulusTangent {
            a: (s + w) * FRAC_1_SQRT_2,
            b: (w - s) * FRAC_1_SQRT_2,
        }
    }

    pub fn to_sw(self) -> (f64, f64) {
        ((self.a - self.b) * FRAC_1_SQRT_2, (self.a + self.b) * FRAC_1_SQRT_2)
    }

    /// Projected norm `|a|`.
    pub fn plus_norm(self) -> f64 {
        self.a.abs()
    }

    /// `Q₀⁺` restricted to the annulus: `dw ds = (a² − b²)/2`.
    pub fn q0(self) -> f64 {
        let (s, w) = self.to_sw();
        s * w
    }

    /// `(a² − b²)/(a² + b²)`, positive exactly on the open cone.
    pub fn cone_margin(self) -> f64 {
        (self.a * self.a - self.b * self.b) / (self.a * self.a + self.b * self.b)
    }

    pub fn scaled(self, k: f64) -> Self {
        AnnulusTangent { a: self.a * k, b: self.b * k }
    }
}

/// Conjugate of the unipotent shear `[[1, f′], [0, 1]]` into the diagonal basis.
pub fn shear_step(v: AnnulusTangent, df: f64) -> AnnulusTangent {
    let k = 0.5 * df * (v.a + v.b);
    AnnulusTangent { a: v.a + k, b: v.b - k }
}

pub fn flight_step(v: AnnulusTangent, t: f64) -> AnnulusTangent {
    AnnulusTangent { a: v.a * t.exp(), b: v.b * (-t).exp() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_examples() {
        let e_plus = AnnulusTangent::new(1.0, 0.0).to_sw();
        assert!((e_plus.0 - FRAC_1_SQRT_2).abs() < 1e-16 && (e_plus.1 - FRAC_1_SQRT_2).abs() < 1e-16);
        let e_minus = AnnulusTangent::new(0.0, 1.0).to_sw();
        assert!((e_minus.0 + FRAC_1_SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn step_examples() {
        let v = AnnulusTangent::new(0.3, -0.7);
        assert_eq!(shear_step(v, 0.0), v);
        assert_eq!(shear_step(AnnulusTangent::new(1.0, 0.0), -10.0), AnnulusTangent::new(-4.0, 5.0));
        assert_eq!(flight_step(v, 0.0), v);
        let e = flight_step(AnnulusTangent::new(1.0, 1.0), 1.0);
        assert_eq!((e.a, e.b), (std::f64::consts::E, (-1.0f64).exp()));
    }

    #[test]
    fn shear_matches_the_sw_matrix() {
        let v = AnnulusTangent::from_sw(0.4, -1.3);
        let df = 2.5;
        let (s, w) = shear_step(v, df).to_sw();
        assert!((s - (0.4 + df * -1.3)).abs() < 1e-14);
        assert!((w + 1.3).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn basis_round_trip(s in -10.0..10.0f64, w in -10.0..10.0f64) {
            let (s2, w2) = AnnulusTangent::from_sw(s, w).to_sw();
            prop_assert!((s2 - s).abs() <= 1e-14 * (1.0 + s.abs() + w.abs()));
            prop_assert!((w2 - w).abs() <= 1e-14 * (1.0 + s.abs() + w.abs()));
        }

        #[test]
        fn shear_identity(a in -5.0..5.0f64, b in -5.0..5.0f64, df in -20.0..20.0f64) {
            let v = shear_step(AnnulusTangent::new(a, b), df);
            let lhs = v.a * v.a - v.b * v.b;
            let rhs = (a * a - b * b) + df * (a + b) * (a + b);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs() + (a * a + b * b) * (1.0 + df.abs())));
        }

        #[test]
        fn flight_preserves_product_and_raises_q0(a in -5.0..5.0f64, b in -5.0..5.0f64, t in 0.0..8.0f64) {
            let v = AnnulusTangent::new(a, b);
            let f = flight_step(v, t);
            prop_assert!((f.a * f.b - a * b).abs() <= 1e-12 * (1.0 + (a * b).abs()));
            // dw ds = (a² − b²)/2 gains a²(e^{2t} − 1) + b²(1 − e^{−2t}) ≥ 0
            prop_assert!(f.q0() >= v.q0() - 1e-12 * (1.0 + a * a + b * b));
        }

        #[test]
        fn nonnegative_shear_raises_q0_and_plus_norm(a in 0.0..5.0f64, frac in -1.0..1.0f64, df in 0.0..20.0f64) {
            let v = AnnulusTangent::new(a, frac * a);
            let w = shear_step(v, df);
            prop_assert!(w.q0() >= v.q0() - 1e-12);
            prop_assert!(w.plus_norm() >= v.plus_norm() - 1e-12);
        }
    }
}
