//! Fixed-panel composite Gauss–Legendre quadrature.

use crate::error::{LabError, Result};

// 5-point Gauss–Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Integrates `f` over `[a, b]` with `panels` equal panels of 5-point Gauss–Legendre.
pub fn composite<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    if a == b || panels == 0 {
        return 0.0;
    }
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let mut panel = 0.0;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            panel += w * f(mid + half * x);
        }
        total += panel * half;
    }
    total
}

/// Tensor-product composite rule on a rectangle.
pub fn composite_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    (ax, bx): (f64, f64),
    (ay, by): (f64, f64),
    panels: usize,
) -> f64 {
    let wx = (bx - ax) / panels as f64;
    let wy = (by - ay) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let mx = ax + (i as f64 + 0.5) * wx;
        for (xi, wxi) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            let x = mx + 0.5 * wx * xi;
            let mut col = 0.0;
            for j in 0..panels {
                let my = ay + (j as f64 + 0.5) * wy;
                for (yj, wyj) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
                    col += wyj * f(x, my + 0.5 * wy * yj);
                }
            }
            total += wxi * col;
        }
    }
    total * 0.25 * wx * wy
}

/// Doubles the panel count until two successive estimates agree to `tol`.
///
/// Returns the finer estimate together with the panel count that produced it.
pub fn until_converged<F: FnMut(usize) -> f64>(
    mut estimate: F,
    start_panels: usize,
    max_panels: usize,
    tol: f64,
) -> Result<(f64, usize)> {
    let mut panels = start_panels.max(1);
    let mut prev = estimate(panels);
    let mut disagreement = f64::INFINITY;
    while panels * 2 <= max_panels {
        panels *= 2;
        let next = estimate(panels);
        disagreement = (next - prev).abs();
        if disagreement <= tol {
            return Ok((next, panels));
        }
        prev = next;
    }
    Err(LabError::QuadratureNonConvergence { disagreement })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        // degree 9 is exact for 5-point Gauss-Legendre on one panel
        let v = composite(|x| x.powi(9) + 3.0 * x * x, 0.0, 2.0, 1);
        assert!((v - (2f64.powi(10) / 10.0 + 8.0)).abs() < 1e-10);
    }

    #[test]
    fn smooth_integrand_converges() {
        let v = composite(f64::sin, 0.0, std::f64::consts::PI, 16);
        assert!((v - 2.0).abs() < 1e-14);
        let area = composite_2d(|x, y| x * y, (0.0, 1.0), (0.0, 2.0), 3);
        assert!((area - 1.0).abs() < 1e-14);
    }

    #[test]
    fn doubling_reports_non_convergence() {
        let mut calls = 0;
        let r = until_converged(
            |n| {
                calls += 1;
                n as f64
            },
            1,
            8,
            1e-8,
        );
        assert!(matches!(r, Err(LabError::QuadratureNonConvergence { .. })));
        assert_eq!(calls, 4);
    }
}
