//! Hyperboloid model of the hyperbolic plane.
//!
//! A point `z = x + iy` of the upper half-plane corresponds to the symmetric
//! matrix `S = (1/y)[[x²+y², x], [x, 1]]`, written as `S = [[x0+x1, x2], [x2, x0−x1]]`,
//! and `g ∈ SL(2,ℝ)` acts by `S ↦ g S gᵀ`. The bilinear form is
//! `⟨u, v⟩ = −u0v0 + u1v1 + u2v2`, the plane is `⟨x, x⟩ = −1, x0 > 0`, and
//! geodesic lines are the sections by planes through the origin, recorded by
//! their unit spacelike normal.

use std::ops::{Add, Mul, Neg, Sub};

use super::group::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const CENTER: Vec3 = Vec3([1.0, 0.0, 0.0]);

    pub fn lorentz(&self, other: &Vec3) -> f64 {
        let (a, b) = (&self.0, &other.0);
        -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// Lorentzian cross product, orthogonal to both factors under `lorentz`.
    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let (a, b) = (&self.0, &other.0);
        Vec3([
            -(a[1] * b[2] - a[2] * b[1]),
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Rescales a timelike vector onto the upper sheet.
    pub fn normalize_point(&self) -> Vec3 {
        let n = (-self.lorentz(self)).sqrt();
        let s = if self.0[0] < 0.0 { -1.0 } else { 1.0 };
        *self * (s / n)
    }

    /// Rescales a spacelike vector to unit length.
    pub fn normalize_spacelike(&self) -> Vec3 {
        *self * self.lorentz(self).sqrt().recip()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self * -1.0
    }
}

/// Hyperbolic distance between two points of the hyperboloid.
pub fn distance(p: &Vec3, q: &Vec3) -> f64 {
    (-p.lorentz(q)).max(1.0).acosh()
}

/// Linear action of a group element on Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry(pub [[f64; 3]; 3]);

impl Isometry {
    pub fn from_group(g: &GroupElement) -> Self {
        let mut cols = [[0.0; 3]; 3];
        for (j, col) in cols.iter_mut().enumerate() {
            let mut e = [0.0; 3];
            e[j] = 1.0;
            *col = act(g, &Vec3(e)).0;
        }
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = cols[j][i];
            }
        }
        Isometry(m)
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        let x = &v.0;
        Vec3([
            m[0][0] * x[0] + m[0][1] * x[1] + m[0][2] * x[2],
            m[1][0] * x[0] + m[1][1] * x[1] + m[1][2] * x[2],
            m[2][0] * x[0] + m[2][1] * x[1] + m[2][2] * x[2],
        ])
    }
}

/// `S ↦ g S gᵀ` on a single vector.
pub fn act(g: &GroupElement, v: &Vec3) -> Vec3 {
    let [a, b, c, d] = g.entries();
    let [x0, x1, x2] = v.0;
    let (s11, s12, s22) = (x0 + x1, x2, x0 - x1);
    // g S
    let (m11, m12) = (a * s11 + b * s12, a * s12 + b * s22);
    let (m21, m22) = (c * s11 + d * s12, c * s12 + d * s22);
    // (g S) gᵀ
    let t11 = m11 * a + m12 * b;
    let t12 = m11 * c + m12 * d;
    let t22 = m21 * c + m22 * d;
    Vec3([0.5 * (t11 + t22), 0.5 * (t11 - t22), t12])
}

/// Image of the base point `i` under `g`: `cosh d(i, g·i)` is its first coordinate.
pub fn orbit_point(g: &GroupElement) -> Vec3 {
    let [a, b, c, d] = g.entries();
    Vec3([
        0.5 * (a * a + b * b + c * c + d * d),
        0.5 * (a * a + b * b - c * c - d * d),
        a * c + b * d,
    ])
}

/// Displacement `d(i, g·i)`.
pub fn displacement(g: &GroupElement) -> f64 {
    orbit_point(g).0[0].max(1.0).acosh()
}

/// Null vector of a boundary point of the upper half-plane (`None` is ∞).
pub fn boundary_null(xi: Option<f64>) -> Vec3 {
    match xi {
        Some(x) => Vec3([0.5 * (x * x + 1.0), 0.5 * (x * x - 1.0), x]),
        None => Vec3([0.5, 0.5, 0.0]),
    }
}

/// Unit tangent vector: a point together with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub point: Vec3,
    pub dir: Vec3,
}

impl Frame {
    /// The frame at `i` pointing along the geodesic flow, i.e. the identity of PSL(2,ℝ).
    pub const BASE: Frame = Frame {
        point: Vec3([1.0, 0.0, 0.0]),
        dir: Vec3([0.0, 1.0, 0.0]),
    };

    pub fn from_group(g: &GroupElement) -> Frame {
        Frame {
            point: orbit_point(g),
            dir: act(g, &Frame::BASE.dir),
        }
    }

    /// Geodesic flow for time `t`.
    pub fn flow(&self, t: f64) -> Frame {
        let (c, s) = (t.cosh(), t.sinh());
        Frame {
            point: self.point * c + self.dir * s,
            dir: self.point * s + self.dir * c,
        }
    }

    pub fn transform(&self, iso: &Isometry) -> Frame {
        Frame {
            point: iso.apply(&self.point),
            dir: iso.apply(&self.dir),
        }
    }

    /// Re-orthonormalizes against rounding drift.
    pub fn renormalized(&self) -> Frame {
        let p = self.point.normalize_point();
        let d = self.dir + p * p.lorentz(&self.dir);
        Frame {
            point: p,
            dir: d.normalize_spacelike(),
        }
    }

    /// Oriented geodesic line through this frame.
    pub fn line(&self) -> Line {
        Line {
            normal: self.point.cross(&self.dir).normalize_spacelike(),
        }
    }

    /// Future endpoint (null vector) of the geodesic.
    pub fn forward_end(&self) -> Vec3 {
        self.point + self.dir
    }

    pub fn backward_end(&self) -> Vec3 {
        self.point - self.dir
    }
}

/// Oriented geodesic line given by its unit spacelike normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub normal: Vec3,
}

impl Line {
    /// `|⟨n₁, n₂⟩| < 1` exactly when the two lines cross.
    pub fn crosses(&self, other: &Line) -> bool {
        self.normal.lorentz(&other.normal).abs() < 1.0 - 1e-12
    }

    /// Same unoriented line.
    pub fn coincides(&self, other: &Line, tol: f64) -> bool {
        let a = (self.normal - other.normal).euclid_norm();
        let b = (self.normal + other.normal).euclid_norm();
        a.min(b) <= tol * self.normal.euclid_norm().max(1.0)
    }

    /// Distance between ultraparallel lines (0 if they meet).
    pub fn separation(&self, other: &Line) -> f64 {
        self.normal.lorentz(&other.normal).abs().max(1.0).acosh()
    }

    pub fn side(&self, p: &Vec3) -> f64 {
        self.normal.lorentz(p)
    }

    pub fn transform(&self, iso: &Isometry) -> Line {
        Line {
            normal: iso.apply(&self.normal),
        }
    }

    /// Closest point of the line to `i`, with `d(i, line)`.
    pub fn distance_to_center(&self) -> f64 {
        // sinh d = |⟨center, n⟩|
        self.normal.0[0].abs().asinh()
    }
}

/// Axis of a hyperbolic element, as the frame at the point of the axis closest
/// to `i`, pointing in the translation direction.
pub fn axis(g: &GroupElement) -> Option<Frame> {
    let [a, b, c, d] = g.entries();
    if (a + d).abs() <= 2.0 {
        return None;
    }
    // (g − g⁻¹)·J is symmetric and fixed by S ↦ g S gᵀ; its vector is the axis normal
    let n = Vec3([c - b, -b - c, a - d]);
    if !(n.lorentz(&n) > 0.0) {
        return None;
    }
    let n = n.normalize_spacelike();
    let point = (Vec3::CENTER - n * Vec3::CENTER.lorentz(&n)).normalize_point();
    let dir = point.cross(&n).normalize_spacelike();
    let dir = if act(g, &point).lorentz(&dir) < 0.0 { -dir } else { dir };
    Some(Frame { point, dir }.renormalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::frames::{frame_flow, FrameGenerator};

    #[test]
    fn isometry_preserves_the_form() {
        let g = frame_flow(FrameGenerator::H, 0.7) * frame_flow(FrameGenerator::V, 1.9);
        let iso = Isometry::from_group(&g);
        let u = Vec3([2.0, 0.3, -1.1]);
        let v = Vec3([0.4, 1.0, 0.5]);
        let lhs = iso.apply(&u).lorentz(&iso.apply(&v));
        assert!((lhs - u.lorentz(&v)).abs() < 1e-12);
    }

    #[test]
    fn geodesic_flow_matches_group_action() {
        let g = frame_flow(FrameGenerator::V, 0.4) * frame_flow(FrameGenerator::H, -1.2);
        let t = 2.3;
        let via_group = Frame::from_group(&(g * frame_flow(FrameGenerator::X, t)));
        let via_frame = Frame::from_group(&g).flow(t);
        assert!((via_group.point - via_frame.point).euclid_norm() < 1e-12);
        assert!((via_group.dir - via_frame.dir).euclid_norm() < 1e-12);
        let d = distance(&Frame::from_group(&g).point, &via_frame.point);
        assert!((d - t).abs() < 1e-10);
    }

    #[test]
    fn half_plane_and_hyperboloid_agree() {
        let g = frame_flow(FrameGenerator::H, 0.9) * frame_flow(FrameGenerator::X, 0.5);
        let (x, y) = g.act_on_half_plane((0.0, 1.0));
        let p = orbit_point(&g);
        // S = (1/y)[[x²+y², x],[x,1]]
        assert!((p.0[2] - x / y).abs() < 1e-12);
        assert!((p.0[0] - p.0[1] - 1.0 / y).abs() < 1e-12);
    }

    #[test]
    fn axis_of_a_translation_is_invariant() {
        let g = frame_flow(FrameGenerator::V, 0.8)
            * frame_flow(FrameGenerator::X, 3.0)
            * frame_flow(FrameGenerator::V, -0.8);
        let f = axis(&g).unwrap();
        let iso = Isometry::from_group(&g);
        let moved = f.transform(&iso);
        // g moves the axis along itself by the translation length
        let expected = f.flow(3.0);
        assert!((moved.point - expected.point).euclid_norm() < 1e-10);
        assert!((moved.dir - expected.dir).euclid_norm() < 1e-10);
        // the base point lies on this axis
        assert!(distance(&f.point, &Vec3::CENTER) < 1e-12);
    }

    #[test]
    fn crossing_and_ultraparallel_lines() {
        use std::f64::consts::FRAC_PI_2;
        let a = Frame::BASE.line();
        let turned = Frame::from_group(&frame_flow(FrameGenerator::V, 1.0)).line();
        assert!(a.crosses(&turned));
        let reversed = Frame::from_group(&frame_flow(FrameGenerator::V, std::f64::consts::PI)).line();
        assert!(a.coincides(&reversed, 1e-12));
        // perpendicular at distance 2 along a common perpendicular
        let g = frame_flow(FrameGenerator::V, FRAC_PI_2)
            * frame_flow(FrameGenerator::X, 2.0)
            * frame_flow(FrameGenerator::V, FRAC_PI_2);
        let far = Frame::from_group(&g).line();
        assert!(!a.crosses(&far));
        assert!((a.separation(&far) - 2.0).abs() < 1e-12);
    }
}
