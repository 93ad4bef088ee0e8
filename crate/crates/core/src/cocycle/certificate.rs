//! Cone certificates, cone flips and projected-norm Lyapunov estimates.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{flight_step, shear_step, AnnulusTangent, ReturnSequence};
use crate::error::{invalid, LabError, Result};
use crate::surgery::TwistProfile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CertificateOutcome {
    /// Every image of the closed cone lies in the open cone; `margin` is the
    /// minimum of `(a² − b²)/(a² + b²)` over the images of the extreme rays.
    Pass { margin: f64 },
    /// The image of an extreme ray left the open cone or its quadrant at `step`.
    Fail { step: usize, witness: AnnulusTangent },
}

impl CertificateOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CertificateOutcome::Pass { .. })
    }

    pub fn margin(&self) -> f64 {
        match *self {
            CertificateOutcome::Pass { margin } => margin,
            CertificateOutcome::Fail { witness, .. } => witness.cone_margin(),
        }
    }
}

/// Pushes the extreme rays `(1, ±1)` of the closed cone `{a² ≥ b²}, a > 0`
/// through flight-then-shear steps. Linear images of a planar cone are spanned
/// by the images of its extreme rays, and `a > 0` throughout is the
/// first-quadrant preservation behind orientability. Meaningful for `q ≥ 0`.
pub fn anosov_certificate(seq: &ReturnSequence, twist: &TwistProfile) -> CertificateOutcome {
    let mut rays = [AnnulusTangent::new(1.0, 1.0), AnnulusTangent::new(1.0, -1.0)];
    let mut margin = f64::INFINITY;
    for (step, &(t, w)) in seq.steps.iter().enumerate() {
        let df = twist.df(w);
        for ray in rays.iter_mut() {
            let v = shear_step(flight_step(*ray, t), df);
            let m = v.cone_margin();
            if !(v.a > 0.0 && m > 0.0) {
                return CertificateOutcome::Fail { step, witness: v };
            }
            margin = margin.min(m);
            *ray = v.scaled(1.0 / v.a);
        }
    }
    if seq.steps.is_empty() {
        margin = 0.0;
    }
    CertificateOutcome::Pass { margin }
}

/// `a ≤ −K b ≤ 0`.
pub fn in_flipped_half_cone(a: f64, b: f64, k: f64) -> bool {
    a <= -k * b && -k * b <= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlipReport {
    pub k: f64,
    /// Crossing height where `f′` is minimal.
    pub w: f64,
    pub df: f64,
    /// Boundary rays `(K, 1)` and `(0, 1)` of `{0 ≤ a ≤ K b}` in `(s, w)` components.
    pub sources: [(f64, f64); 2],
    /// Their images `(K + f′, 1)` and `(f′, 1)`, both in `{a ≤ −K b ≤ 0}`.
    pub images: [(f64, f64); 2],
}

/// Half-cone flip for `q < 0` with `K = e^{−t_min}`: the shear at `w` maps
/// `{0 ≤ a ≤ K b}` into `{a ≤ −K b ≤ 0}` iff `f′(w) ≤ −2K`.
pub fn cone_flip_detector(twist: &TwistProfile, t_min: f64) -> Option<FlipReport> {
    let k = (-t_min).exp();
    // g′ is even and maximal on its plateau, so f′ is extremal at w = 0
    let w = 0.0;
    let df = twist.df(w);
    let sources = [(k, 1.0), (0.0, 1.0)];
    let images = sources.map(|(a, b)| (a + df * b, b));
    if images.iter().all(|&(a, b)| in_flipped_half_cone(a, b, k)) {
        Some(FlipReport { k, w, df, sources, images })
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovEstimate {
    pub exponent: f64,
    pub total_time: f64,
    pub steps: usize,
}

/// `(1/Σtᵢ)·log(‖v_N‖₊/‖v₀‖₊)` with the projected norm `|a|`, accumulated in log space.
pub fn lyapunov_estimate(seq: &ReturnSequence, twist: &TwistProfile, v0: AnnulusTangent) -> Result<LyapunovEstimate> {
    if !(v0.a > 0.0 && v0.cone_margin() > 0.0) {
        return Err(invalid("v0", "must lie in the open positive cone"));
    }
    let mut v = v0.scaled(1.0 / v0.a);
    let mut log_growth = 0.0;
    for (step, &(t, w)) in seq.steps.iter().enumerate() {
        let next = shear_step(flight_step(v, t), twist.df(w));
        if !(next.a > 0.0 && next.cone_margin() > 0.0) {
            return Err(LabError::ConeExit { step });
        }
        log_growth += next.a.ln();
        v = next.scaled(1.0 / next.a);
    }
    let total_time = seq.total_time();
    Ok(LyapunovEstimate {
        exponent: log_growth / total_time,
        total_time,
        steps: seq.steps.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemarkCheck {
    pub steps: usize,
    /// `a′ = a eᵗ + f′ a₀ ·(dw-component)` against the matrix product.
    pub max_deviation: f64,
    /// The printed form `a′ = a eᵗ + f′ a₀ (a eᵗ − b e⁻ᵗ)`.
    pub literal_max_deviation: f64,
}

/// Compares the closed-form `e⁺` coefficient after flight and shear with the
/// product of the `(s, w)` matrices, at seeded random cone vectors.
pub fn remark_cross_check(twist: &TwistProfile, steps: usize, t_min: f64, seed: u64) -> RemarkCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = twist.epsilon;
    // ∂/∂s = a₀ e⁺ + b₀ e⁻
    let a0 = FRAC_1_SQRT_2;
    let mut check = RemarkCheck { steps, max_deviation: 0.0, literal_max_deviation: 0.0 };
    for _ in 0..steps {
        let a = rng.gen_range(0.1..1.0);
        let b = a * rng.gen_range(-1.0..1.0);
        let t = t_min + 5.0 * rng.gen::<f64>();
        let df = twist.df(rng.gen_range(-eps..eps));

        let (et, emt) = (t.exp(), (-t).exp());
        let (s, w) = AnnulusTangent::new(a * et, b * emt).to_sw();
        let matrix = AnnulusTangent::from_sw(s + df * w, w).a;

        let dw_component = (a * et + b * emt) * FRAC_1_SQRT_2;
        let remark = a * et + df * a0 * dw_component;
        let literal = a * et + df * a0 * (a * et - b * emt);
        let scale = matrix.abs().max(1.0);
        check.max_deviation = check.max_deviation.max((remark - matrix).abs() / scale);
        check.literal_max_deviation = check.literal_max_deviation.max((literal - matrix).abs() / scale);
    }
    check
}

#[cfg(test)]
mod tests {
    use super::super::SamplerSpec;
    use super::*;
    use crate::surgery::PlateauParams;

    const SYSTOLE: f64 = 3.0571;

    fn twist(q: i64, eps: f64) -> TwistProfile {
        TwistProfile::new(q, eps, PlateauParams::default()).unwrap()
    }

    fn seq(index: u64) -> ReturnSequence {
        ReturnSequence::sample(&SamplerSpec::uniform(SYSTOLE, 50), 0.05, 17, index).unwrap()
    }

    #[test]
    fn zero_twist_margin_is_the_flight_margin() {
        let s = seq(0);
        let out = anosov_certificate(&s, &twist(0, 0.05));
        // first flight from (1, ±1): margin tanh(2 t₁), later rays lie deeper inside
        let expected = (2.0 * s.steps[0].0).tanh();
        assert!((out.margin() - expected).abs() < 1e-12);
    }

    #[test]
    fn positive_twists_pass() {
        for q in [1, 2, 3] {
            for i in 0..500 {
                let out = anosov_certificate(&seq(i), &twist(q, 0.05));
                assert!(out.is_pass() && out.margin() > 0.0, "{q} {i}: {out:?}");
            }
        }
    }

    #[test]
    fn boundary_ray_enters_open_cone() {
        let v = shear_step(AnnulusTangent::new(1.0, -1.0), 0.0);
        assert_eq!(v.cone_margin(), 0.0);
        // the horizontal axis (s, 0) is fixed by every shear
        let v = shear_step(AnnulusTangent::new(1.0, -1.0), 0.3);
        assert_eq!(v, AnnulusTangent::new(1.0, -1.0));
        let v = shear_step(AnnulusTangent::new(1.0, 1.0), 0.3);
        assert!(v.cone_margin() > 0.0);
    }

    #[test]
    fn strong_negative_twist_fails_the_certificate() {
        let s = ReturnSequence::traced(vec![(0.2, 0.0); 5]).unwrap();
        let out = anosov_certificate(&s, &twist(-1, 0.01));
        assert!(matches!(out, CertificateOutcome::Fail { step: 0, .. }));
    }

    #[test]
    fn flip_examples() {
        assert!(in_flipped_half_cone(-4.0, 5.0, 0.5));
        assert!(!in_flipped_half_cone(1.0, 0.0, 0.5));
        let k = (-SYSTOLE).exp();
        // inf f′ = q/(1.6 ε) for the 0.8 plateau
        let small = cone_flip_detector(&twist(-1, 0.05), SYSTOLE).unwrap();
        assert!(small.df <= -2.0 * k);
        assert!((small.df + 1.0 / (1.6 * 0.05)).abs() < 1e-12);
        assert!(cone_flip_detector(&twist(-1, 10.0), SYSTOLE).is_none());
        let threshold = 1.0 / (1.6 * 2.0 * k);
        assert!(cone_flip_detector(&twist(-1, 0.99 * threshold), SYSTOLE).is_some());
        assert!(cone_flip_detector(&twist(-1, 1.01 * threshold), SYSTOLE).is_none());
    }

    #[test]
    fn flip_and_certificate_are_exclusive_for_nonnegative_twists() {
        for q in [0, 1, 4] {
            assert!(cone_flip_detector(&twist(q, 0.01), SYSTOLE).is_none());
        }
    }

    #[test]
    fn pure_flight_has_unit_exponent() {
        let s = ReturnSequence::without_crossings(&[3.1, 4.7, 5.0, 3.3], 0.05);
        let e = lyapunov_estimate(&s, &twist(1, 0.05), AnnulusTangent::new(1.0, 0.4)).unwrap();
        assert!((e.exponent - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positive_twist_exponent_is_at_least_one() {
        for i in 0..200 {
            let e = lyapunov_estimate(&seq(i), &twist(1, 0.05), AnnulusTangent::new(1.0, 0.0)).unwrap();
            assert!(e.exponent >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn exponent_rejects_vectors_outside_the_cone() {
        let s = seq(0);
        assert!(lyapunov_estimate(&s, &twist(1, 0.05), AnnulusTangent::new(1.0, 1.0)).is_err());
        let strong = ReturnSequence::traced(vec![(0.2, 0.0); 3]).unwrap();
        let r = lyapunov_estimate(&strong, &twist(-1, 0.01), AnnulusTangent::new(1.0, 0.0));
        assert!(matches!(r, Err(LabError::ConeExit { step: 0 })));
    }

    #[test]
    fn remark_formula_matches_matrix_product() {
        let c = remark_cross_check(&twist(1, 0.05), 10_000, SYSTOLE, 5);
        assert!(c.max_deviation <= 1e-10, "{c:?}");
        assert!(c.literal_max_deviation > 1e-3);
    }
}
