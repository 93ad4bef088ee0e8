//! Double-double arithmetic for exact-enough group words.
//!
//! Axes of conjugates drift like `e^t` along a walk, so the walk runs on
//! unevaluated sums `hi + lo` with `|lo| ≤ ulp(hi)/2` (about 32 digits).

use std::ops::{Add, Mul, Neg, Sub};

use crate::hyperbolic::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = Dd::new(self.hi.sqrt());
        let r = self - s * s;
        s + Dd::new(r.hi / (2.0 * s.hi))
    }

    pub fn recip(self) -> Dd {
        let q1 = 1.0 / self.hi;
        let r = Dd::ONE - self * Dd::new(q1);
        let q2 = r.hi / self.hi;
        let r = r - self * Dd::new(q2);
        let q3 = r.hi / self.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::new(q3)
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }
}

/// Unimodular matrix `[[a, b], [c, d]]` modulo sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DdMat(pub [Dd; 4]);

impl DdMat {
    pub const IDENTITY: DdMat = DdMat([Dd::ONE, Dd::ZERO, Dd::ZERO, Dd::ONE]);

    pub fn inverse(&self) -> DdMat {
        let [a, b, c, d] = self.0;
        DdMat([d, -b, -c, a])
    }

    pub fn trace(&self) -> Dd {
        self.0[0] + self.0[3]
    }

    pub fn to_element(&self) -> GroupElement {
        let [a, b, c, d] = self.0.map(|x| x.hi);
        GroupElement::from_entries(a, b, c, d).expect("unimodular")
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.hi.abs()).fold(0.0, f64::max)
    }

    /// Max-entry distance in the sign quotient, relative to the larger entry.
    pub fn relative_distance(&self, other: &DdMat) -> f64 {
        let diff = |s: f64| {
            self.0.iter().zip(&other.0).map(|(x, y)| (*x - *y * Dd::new(s)).hi.abs()).fold(0.0, f64::max)
        };
        diff(1.0).min(diff(-1.0)) / self.max_abs().max(other.max_abs()).max(1.0)
    }
}

impl Mul for DdMat {
    type Output = DdMat;
    fn mul(self, o: DdMat) -> DdMat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        DdMat([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

/// The octagon generators `g_k = ρ_k T ρ_k⁻¹` from closed forms:
/// `ρ_k` rotates by `kπ/4` about `i` and `T = diag(eʳ, e⁻ʳ)`, `cosh r = 1 + √2`.
pub(crate) fn octagon_generators() -> [DdMat; 8] {
    let two = Dd::new(2.0);
    let sqrt2 = two.sqrt();
    let cosh_r = Dd::ONE + sqrt2;
    let sinh_r = (cosh_r * cosh_r - Dd::ONE).sqrt();
    let er = cosh_r + sinh_r;
    let t = DdMat([er, Dd::ZERO, Dd::ZERO, er.recip()]);
    // half angle π/8
    let half = Dd::new(0.5);
    let c1 = (two + sqrt2).sqrt() * half;
    let s1 = (two - sqrt2).sqrt() * half;
    let mut out = [DdMat::IDENTITY; 8];
    let (mut c, mut s) = (Dd::ONE, Dd::ZERO);
    for g in out.iter_mut() {
        let rho = DdMat([c, -s, s, c]);
        *g = canonical(rho * t * rho.inverse());
        (c, s) = (c * c1 - s * s1, s * c1 + c * s1);
    }
    out
}

/// First nonzero entry positive.
pub(crate) fn canonical(m: DdMat) -> DdMat {
    match m.0.iter().find(|x| x.hi != 0.0) {
        Some(x) if x.hi < 0.0 => DdMat(m.0.map(|y| -y)),
        _ => m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::build_genus2_surface;

    #[test]
    fn arithmetic_beyond_double() {
        let third = Dd::new(3.0).recip();
        let err = Dd::ONE - third * Dd::new(3.0);
        assert!(err.hi.abs() < 1e-30);
        let r = Dd::new(2.0).sqrt();
        assert!((r * r - Dd::new(2.0)).hi.abs() < 1e-30);
    }

    #[test]
    fn generators_match_and_satisfy_the_relation() {
        let s = build_genus2_surface().unwrap();
        let g = octagon_generators();
        for k in 0..8 {
            let [a, b, c, d] = s.generator(k as u8).entries();
            let m = DdMat([a, b, c, d].map(Dd::new));
            assert!(g[k].relative_distance(&m) < 1e-14, "generator {k}");
            assert!(g[(k + 4) % 8].relative_distance(&g[k].inverse()) < 1e-30);
        }
        let product = s.relation.iter().fold(DdMat::IDENTITY, |acc, &k| acc * g[k as usize]);
        assert!(product.relative_distance(&DdMat::IDENTITY) < 1e-29);
    }
}
