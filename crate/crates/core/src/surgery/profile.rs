//! Closed-form smooth profiles: the twist `g`, the bump `λ` and the cutoff `b`.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quadrature;

const STEP_PANELS: usize = 2048;

/// Smoothed Heaviside step of half-width `r` built from the standard bump
/// `exp(−1/(1 − (x/r)²))`, with its first antiderivative.
///
/// Cumulative integrals are tabulated once on a uniform grid; evaluation adds
/// a single Gauss–Legendre panel for the remainder, so values are accurate to
/// rounding.
#[derive(Debug, Clone)]
pub struct SmoothStep {
    radius: f64,
    norm: f64,
    width: f64,
    // ∫_{-r}^{x_k} φ and ∫_{-r}^{x_k} s φ(s) ds at the grid nodes
    cdf: Arc<Vec<f64>>,
    moment: Arc<Vec<f64>>,
}

fn raw_bump(x: f64, r: f64) -> f64 {
    let u = x / r;
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

impl SmoothStep {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(invalid("mollifier_radius", "must be positive and finite"));
        }
        let width = 2.0 * radius / STEP_PANELS as f64;
        let mut cdf = Vec::with_capacity(STEP_PANELS + 1);
        let mut moment = Vec::with_capacity(STEP_PANELS + 1);
        let (mut c, mut m) = (0.0, 0.0);
        cdf.push(0.0);
        moment.push(0.0);
        for k in 0..STEP_PANELS {
            let a = -radius + k as f64 * width;
            let b = a + width;
            c += quadrature::composite(|x| raw_bump(x, radius), a, b, 1);
            m += quadrature::composite(|x| x * raw_bump(x, radius), a, b, 1);
            cdf.push(c);
            moment.push(m);
        }
        let norm = 1.0 / c;
        for v in cdf.iter_mut() {
            *v *= norm;
        }
        for v in moment.iter_mut() {
            *v *= norm;
        }
        Ok(SmoothStep {
            radius,
            norm,
            width,
            cdf: Arc::new(cdf),
            moment: Arc::new(moment),
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Normalized bump `φ`, integral one.
    pub fn density(&self, x: f64) -> f64 {
        self.norm * raw_bump(x, self.radius)
    }

    fn cumulative(&self, y: f64) -> (f64, f64) {
        let r = self.radius;
        if y <= -r {
            return (0.0, 0.0);
        }
        if y >= r {
            return (1.0, 0.0);
        }
        let pos = (y + r) / self.width;
        let k = (pos.floor() as usize).min(STEP_PANELS - 1);
        let node = -r + k as f64 * self.width;
        let c = self.cdf[k] + quadrature::composite(|x| self.density(x), node, y, 1);
        let m = self.moment[k] + quadrature::composite(|x| x * self.density(x), node, y, 1);
        (c, m)
    }

    /// `Φ(y) = ∫_{-∞}^{y} φ`.
    pub fn step(&self, y: f64) -> f64 {
        self.cumulative(y).0
    }

    /// `Ψ(y) = ∫_{-∞}^{y} Φ = yΦ(y) − ∫_{-∞}^{y} s φ(s) ds`.
    pub fn ramp(&self, y: f64) -> f64 {
        if y <= -self.radius {
            0.0
        } else if y >= self.radius {
            y
        } else {
            let (c, m) = self.cumulative(y);
            y * c - m
        }
    }
}

/// Mollified plateau `g: ℝ → [0, 2π]`.
///
/// `g′ = (π/a)·(1_{[−a,a]} ∗ φ_r)` with `a` the plateau half-width and `r` the
/// mollifier radius, `a + r = 1`. Then `g ≡ 0` on `(−∞, −1]`, `g ≡ 2π` on
/// `[1, ∞)`, `g′` is even, `0 ≤ g′ ≤ π/a`, and `g(0) = π`.
#[derive(Debug, Clone)]
pub struct PlateauProfile {
    half_width: f64,
    step: SmoothStep,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlateauParams {
    pub plateau_half_width: f64,
    pub mollifier_radius: f64,
}

impl Default for PlateauParams {
    fn default() -> Self {
        PlateauParams {
            plateau_half_width: 0.8,
            mollifier_radius: 0.2,
        }
    }
}

impl PlateauProfile {
    pub fn new(params: PlateauParams) -> Result<Self> {
        let PlateauParams {
            plateau_half_width: a,
            mollifier_radius: r,
        } = params;
        if !(a > 0.0) || !(r > 0.0) {
            return Err(invalid("profile", "plateau half-width and mollifier radius must be positive"));
        }
        if ((a + r) - 1.0).abs() > 1e-12 {
            return Err(invalid("profile", format!("support must be [-1, 1]: a + r = {}", a + r)));
        }
        if PI / a > 4.0 {
            return Err(invalid("plateau_half_width", format!("max g' = pi/a = {} exceeds 4", PI / a)));
        }
        Ok(PlateauProfile {
            half_width: a,
            step: SmoothStep::new(r)?,
        })
    }

    pub fn params(&self) -> PlateauParams {
        PlateauParams {
            plateau_half_width: self.half_width,
            mollifier_radius: self.step.radius(),
        }
    }

    fn amplitude(&self) -> f64 {
        PI / self.half_width
    }

    pub fn value(&self, x: f64) -> f64 {
        if x <= -1.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 2.0 * PI;
        }
        let a = self.half_width;
        self.amplitude() * (self.step.ramp(x + a) - self.step.ramp(x - a))
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            return 0.0;
        }
        let a = self.half_width;
        self.amplitude() * (self.step.step(x + a) - self.step.step(x - a))
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let a = self.half_width;
        self.amplitude() * (self.step.density(x + a) - self.step.density(x - a))
    }

    pub fn max_derivative(&self) -> f64 {
        self.amplitude()
    }
}

/// Twist `f(w) = q·g(w/ε)/(2π)`: the real lift of the s-shift, in turns of the
/// unit s-circle, so `f(−ε) = 0` and `f(ε) = q`.
#[derive(Debug, Clone)]
pub struct TwistProfile {
    pub q: i64,
    pub epsilon: f64,
    pub g: PlateauProfile,
}

impl TwistProfile {
    pub fn new(q: i64, epsilon: f64, params: PlateauParams) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(invalid("epsilon", "must be positive and finite"));
        }
        Ok(TwistProfile {
            q,
            epsilon,
            g: PlateauProfile::new(params)?,
        })
    }

    pub fn f(&self, w: f64) -> f64 {
        self.q as f64 * self.g.value(w / self.epsilon) / (2.0 * PI)
    }

    pub fn df(&self, w: f64) -> f64 {
        self.q as f64 * self.g.derivative(w / self.epsilon) / (2.0 * PI * self.epsilon)
    }

    pub fn d2f(&self, w: f64) -> f64 {
        self.q as f64 * self.g.second_derivative(w / self.epsilon)
            / (2.0 * PI * self.epsilon * self.epsilon)
    }

    /// `inf f′` over the chart, attained on the plateau for `q < 0`.
    pub fn inf_df(&self) -> f64 {
        (self.q as f64).min(0.0) * self.g.max_derivative() / (2.0 * PI * self.epsilon)
    }

    pub fn sup_df(&self) -> f64 {
        (self.q as f64).max(0.0) * self.g.max_derivative() / (2.0 * PI * self.epsilon)
    }

    /// Solves `f(w) = target` for `w ∈ (−ε, ε)`; requires `q ≠ 0` and `target`
    /// strictly between 0 and q.
    pub fn solve(&self, target: f64) -> Option<f64> {
        let q = self.q as f64;
        if self.q == 0 || !(target * q.signum() > 0.0 && target * q.signum() < q.abs()) {
            return None;
        }
        let s = q.signum();
        let (mut lo, mut hi) = (-self.epsilon, self.epsilon);
        let mut w = 0.0;
        // safeguarded Newton on a bracket of the monotone function s·f
        for _ in 0..200 {
            let r = s * (self.f(w) - target);
            if r.abs() <= 1e-15 * q.abs().max(1.0) {
                break;
            }
            if r > 0.0 {
                hi = w;
            } else {
                lo = w;
            }
            let d = s * self.df(w);
            let newton = w - r / d;
            w = if d > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 1e-17 {
                break;
            }
        }
        Some(w)
    }
}

/// Bump `λ(t) = exp(1 − 1/(1 − (t/ρ)²))`, `λ(0) = 1`, `λ′(0) = 0`, support `(−ρ, ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub radius: f64,
}

impl Bump {
    pub fn value(&self, t: f64) -> f64 {
        let u = t / self.radius;
        if u.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - u * u)).exp()
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let u = t / self.radius;
        if u.abs() >= 1.0 {
            return 0.0;
        }
        let den = 1.0 - u * u;
        self.value(t) * (-2.0 * u / (self.radius * den * den))
    }
}

/// Standard C^∞ transition `S(u) = 1/(1 + exp(1/u − 1/(1−u)))`.
fn transition(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        1.0 / (1.0 + (1.0 / u - 1.0 / (1.0 - u)).exp())
    }
}

fn transition_derivative(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        // S(1−S) is even in the exponent; use the decaying branch to avoid overflow
        let e = (-(1.0 / u - 1.0 / (1.0 - u)).abs()).exp();
        e / ((1.0 + e) * (1.0 + e)) * (1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u)))
    }
}

/// Cutoff `b` with `b ≡ 1` on `(−∞, 0]`, `b ≡ 0` on `[η, ∞)`, `b′ < 0` on `(0, η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoff {
    pub eta: f64,
}

impl Cutoff {
    pub fn value(&self, t: f64) -> f64 {
        1.0 - transition(t / self.eta)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        -transition_derivative(t / self.eta) / self.eta
    }
}

/// The deformation data `λ` and `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationProfile {
    pub lambda: Bump,
    pub b: Cutoff,
}

impl DeformationProfile {
    /// `λ` supported in `(−fraction·η, fraction·η)`.
    pub fn new(eta: f64, lambda_fraction: f64) -> Result<Self> {
        if !(lambda_fraction > 0.0 && lambda_fraction < 1.0) {
            return Err(invalid("lambda_radius_fraction", "must lie in (0, 1)"));
        }
        Ok(DeformationProfile {
            lambda: Bump {
                radius: lambda_fraction * eta,
            },
            b: Cutoff { eta },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plateau() -> PlateauProfile {
        PlateauProfile::new(PlateauParams::default()).unwrap()
    }

    #[test]
    fn step_is_a_normalized_symmetric_cdf() {
        let s = SmoothStep::new(0.2).unwrap();
        assert_eq!(s.step(-0.3), 0.0);
        assert_eq!(s.step(0.3), 1.0);
        assert!((s.step(0.0) - 0.5).abs() < 1e-14);
        for y in [0.01, 0.05, 0.123, 0.19] {
            assert!((s.step(y) + s.step(-y) - 1.0).abs() < 1e-14);
        }
        assert!((s.ramp(0.2) - 0.2).abs() < 1e-14);
        assert!(s.ramp(-0.2).abs() < 1e-14);
    }

    #[test]
    fn ramp_matches_independent_quadrature() {
        // oracle: integrate the step directly with many panels
        let s = SmoothStep::new(0.2).unwrap();
        for y in [-0.15, -0.02, 0.07, 0.18] {
            let direct = quadrature::composite(|x| s.step(x), -0.2, y, 400);
            assert!((direct - s.ramp(y)).abs() < 1e-12, "{y}: {direct} vs {}", s.ramp(y));
        }
    }

    #[test]
    fn plateau_boundary_values() {
        let g = plateau();
        assert_eq!(g.value(-1.0), 0.0);
        assert_eq!(g.value(-3.0), 0.0);
        assert!((g.value(1.0) - 2.0 * PI).abs() < 1e-15);
        assert!((g.value(0.0) - PI).abs() < 1e-13);
        assert!((g.max_derivative() - PI / 0.8).abs() < 1e-15);
        assert!(g.max_derivative() <= 4.0);
    }

    #[test]
    fn plateau_derivative_is_even_bounded_and_integrates_to_two_pi() {
        let g = plateau();
        let mut prev = g.value(-1.0);
        for i in 0..=2000 {
            let x = -1.0 + 2.0 * i as f64 / 2000.0;
            let d = g.derivative(x);
            assert!((0.0..=4.0).contains(&d));
            assert!((d - g.derivative(-x)).abs() < 1e-13);
            let v = g.value(x);
            assert!(v >= prev - 1e-14, "g not monotone at {x}");
            prev = v;
        }
        let total = quadrature::composite(|x| g.derivative(x), -1.0, 1.0, 400);
        assert!((total - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn derivatives_agree_with_finite_differences() {
        let g = plateau();
        let h = 1e-5;
        for x in [-0.9, -0.75, -0.3, 0.0, 0.62, 0.85] {
            let fd = (g.value(x + h) - g.value(x - h)) / (2.0 * h);
            assert!((fd - g.derivative(x)).abs() < 1e-8, "g' at {x}");
            let fd2 = (g.derivative(x + h) - g.derivative(x - h)) / (2.0 * h);
            assert!((fd2 - g.second_derivative(x)).abs() < 1e-6, "g'' at {x}");
        }
    }

    #[test]
    fn twist_endpoints_and_midpoint() {
        let t = TwistProfile::new(1, 0.05, PlateauParams::default()).unwrap();
        assert_eq!(t.f(-0.05), 0.0);
        assert!((t.f(0.05) - 1.0).abs() < 1e-15);
        assert!((t.f(0.0) - 0.5).abs() < 1e-14);
        // reflection symmetry about (0, q/2) gives ∫ f = qε
        let integral = quadrature::composite(|w| t.f(w), -0.05, 0.05, 256);
        assert!((integral - 0.05).abs() < 1e-14);
    }

    #[test]
    fn solve_inverts_the_twist() {
        let t = TwistProfile::new(3, 0.05, PlateauParams::default()).unwrap();
        for target in [0.001, 0.5, 1.5, 2.999] {
            let w = t.solve(target).unwrap();
            assert!((t.f(w) - target).abs() <= 1e-12);
        }
        assert!(t.solve(0.0).is_none());
        assert!(t.solve(3.0).is_none());
    }

    #[test]
    fn bump_and_cutoff_properties() {
        let d = DeformationProfile::new(1.0, 0.9).unwrap();
        assert_eq!(d.lambda.value(0.0), 1.0);
        assert_eq!(d.lambda.derivative(0.0), 0.0);
        for i in 0..=1000 {
            let t = -1.2 + 2.4 * i as f64 / 1000.0;
            let l = d.lambda.value(t);
            assert!((0.0..=1.0).contains(&l));
            if t.abs() >= 0.9 {
                assert_eq!(l, 0.0);
            }
            let b = d.b.value(t);
            assert!(b >= 0.0 && b <= 1.0);
            if t <= 0.0 {
                assert_eq!(b, 1.0);
            }
            if t >= 1.0 {
                assert_eq!(b, 0.0);
            }
            if t > 0.0 && t < 1.0 {
                assert!(d.b.derivative(t) < 0.0, "b' at {t}");
            }
        }
        let h = 1e-6;
        for t in [0.1, 0.5, 0.8] {
            let fd = (d.b.value(t + h) - d.b.value(t - h)) / (2.0 * h);
            assert!((fd - d.b.derivative(t)).abs() < 1e-7);
            let fl = (d.lambda.value(t + h) - d.lambda.value(t - h)) / (2.0 * h);
            assert!((fl - d.lambda.derivative(t)).abs() < 1e-7);
        }
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(PlateauProfile::new(PlateauParams { plateau_half_width: 0.5, mollifier_radius: 0.5 }).is_err());
        assert!(PlateauProfile::new(PlateauParams { plateau_half_width: 0.8, mollifier_radius: 0.3 }).is_err());
        assert!(TwistProfile::new(1, 0.0, PlateauParams::default()).is_err());
        assert!(DeformationProfile::new(1.0, 1.0).is_err());
    }
}
