//! The canonical frame (X, H, V) on the unit tangent bundle and its flows.

use serde::{Deserialize, Serialize};

use super::group::{GroupElement, Mat2};

/// Generator of one of the three frame flows, as a traceless matrix in sl(2,ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameGenerator {
    /// Geodesic flow.
    X,
    /// Horocyclic-type field `[V, X]`.
    H,
    /// Fiber rotation.
    V,
}

impl FrameGenerator {
    pub const ALL: [FrameGenerator; 3] = [FrameGenerator::X, FrameGenerator::H, FrameGenerator::V];

    pub fn matrix(&self) -> Mat2 {
        match self {
            FrameGenerator::X => Mat2::new(0.5, 0.0, 0.0, -0.5),
            FrameGenerator::H => Mat2::new(0.0, 0.5, 0.5, 0.0),
            FrameGenerator::V => Mat2::new(0.0, -0.5, 0.5, 0.0),
        }
    }
}

/// Closed-form exponential `exp(t·g)`.
pub fn frame_flow(generator: FrameGenerator, t: f64) -> GroupElement {
    let h = 0.5 * t;
    let m = match generator {
        FrameGenerator::X => Mat2::new(h.exp(), 0.0, 0.0, (-h).exp()),
        FrameGenerator::H => Mat2::new(h.cosh(), h.sinh(), h.sinh(), h.cosh()),
        FrameGenerator::V => Mat2::new(h.cos(), -h.sin(), h.sin(), h.cos()),
    };
    GroupElement::from_unimodular(m)
}

/// `AB − BA`.
pub fn bracket(a: &Mat2, b: &Mat2) -> Mat2 {
    a.bracket(b)
}

/// Residuals of `[V,X]=H`, `[H,X]=V`, `[H,V]=X` as max-entry errors.
pub fn structure_residuals() -> [f64; 3] {
    use FrameGenerator::*;
    let (x, h, v) = (X.matrix(), H.matrix(), V.matrix());
    [
        (bracket(&v, &x) - h).max_abs(),
        (bracket(&h, &x) - v).max_abs(),
        (bracket(&h, &v) - x).max_abs(),
    ]
}

/// Largest deviation from the one-parameter group law on a grid of times in `[-span, span]`.
pub fn semigroup_residual(span: f64, steps: usize) -> f64 {
    let mut worst = 0.0_f64;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| -span + 2.0 * span * i as f64 / steps as f64)
        .collect();
    for g in FrameGenerator::ALL {
        for &s in &grid {
            for &t in &grid {
                let lhs = frame_flow(g, s + t);
                let rhs = frame_flow(g, s) * frame_flow(g, t);
                worst = worst.max(lhs.distance(&rhs));
            }
        }
    }
    worst
}
