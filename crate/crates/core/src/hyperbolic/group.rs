use std::fmt;
use std::ops::{Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Plain 2×2 real matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        let m = &self.0;
        Mat2([[k * m[0][0], k * m[0][1]], [k * m[1][0], k * m[1][1]]])
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Commutator `AB − BA`.
    pub fn bracket(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

/// Trace classification of an element of PSL(2,ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    /// Translation along an axis by `length` (curvature −1 units).
    Hyperbolic { length: f64 },
    Parabolic,
    Elliptic,
}

impl Classification {
    pub fn length(&self) -> Option<f64> {
        match self {
            Classification::Hyperbolic { length } => Some(*length),
            _ => None,
        }
    }
}

/// Tolerance on |tr| − 2 separating the three trace classes.
pub const PARABOLIC_TOL: f64 = 1e-12;

/// Unimodular 2×2 matrix modulo sign, stored in its canonical representative.
///
/// Canonical means `det = 1` (after renormalization) and the first nonzero
/// entry in row-major order is positive. Elements act on the upper half-plane
/// by Möbius transformations and on the universal-cover unit tangent bundle by
/// left multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement(Mat2);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Mat2::IDENTITY)
    }

    /// Builds the canonical representative of `±m / sqrt(det m)`.
    pub fn new(m: Mat2) -> Result<Self> {
        let det = m.det();
        if !(det > 0.0) || !det.is_finite() {
            return Err(invalid("matrix", format!("determinant {det} is not positive")));
        }
        let m = if (det - 1.0).abs() <= 1e-14 {
            m
        } else {
            m.scale(det.sqrt().recip())
        };
        Ok(GroupElement(canonical_sign(m)))
    }

    /// Wraps a matrix already known to be unimodular, only fixing the sign.
    pub(crate) fn from_unimodular(m: Mat2) -> Self {
        GroupElement(canonical_sign(m))
    }

    pub fn from_entries(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(Mat2::new(a, b, c, d))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn entries(&self) -> [f64; 4] {
        let m = &self.0 .0;
        [m[0][0], m[0][1], m[1][0], m[1][1]]
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    /// Re-applies determinant and sign normalization.
    pub fn normalized(&self) -> Self {
        Self::new(self.0).unwrap_or(*self)
    }

    pub fn inverse(&self) -> Self {
        let m = &self.0 .0;
        GroupElement::from_unimodular(Mat2::new(m[1][1], -m[0][1], -m[1][0], m[0][0]))
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(GroupElement::identity(), |acc, _| acc * base)
    }

    /// Max-entry distance in the sign quotient.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        let plus = (self.0 - other.0).max_abs();
        let minus = (self.0 - other.0.scale(-1.0)).max_abs();
        plus.min(minus)
    }

    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Distance to the identity in the sign quotient.
    pub fn identity_residual(&self) -> f64 {
        self.distance(&GroupElement::identity())
    }

    pub fn classify(&self) -> Classification {
        classify_and_length(self)
    }

    /// Möbius action on a point `(x, y)` of the upper half-plane.
    pub fn act_on_half_plane(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let [a, b, c, d] = self.entries();
        // (a z + b) / (c z + d) with z = x + i y
        let (nr, ni) = (a * x + b, a * y);
        let (dr, di) = (c * x + d, c * y);
        let den = dr * dr + di * di;
        ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    }
}

fn canonical_sign(m: Mat2) -> Mat2 {
    let first = m.0.iter().flatten().copied().find(|x| *x != 0.0);
    match first {
        Some(x) if x < 0.0 => m.scale(-1.0),
        _ => m,
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        // no determinant renormalization here: det() cancels catastrophically
        // for large entries and would inject more error than it removes
        GroupElement(canonical_sign(self.0 * rhs.0))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "[[{a:.6}, {b:.6}], [{c:.6}, {d:.6}]]")
    }
}

/// Trace classification; hyperbolic elements carry `2·arccosh(|tr|/2)`.
pub fn classify_and_length(g: &GroupElement) -> Classification {
    let t = g.trace().abs();
    if t > 2.0 + PARABOLIC_TOL {
        Classification::Hyperbolic {
            length: translation_length(t),
        }
    } else if t < 2.0 - PARABOLIC_TOL {
        Classification::Elliptic
    } else {
        Classification::Parabolic
    }
}

/// `2·arccosh(|tr|/2)`, the translation length for a trace of absolute value > 2.
pub fn translation_length(abs_trace: f64) -> f64 {
    2.0 * (abs_trace / 2.0).acosh()
}
