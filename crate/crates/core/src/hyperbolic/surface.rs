//! The regular-octagon genus-2 surface.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::frames::{frame_flow, FrameGenerator};
use super::group::{classify_and_length, Classification, GroupElement};
use super::minkowski::{orbit_point, Isometry, Line, Vec3};
use crate::error::{LabError, Result};

pub const GENERATOR_COUNT: usize = 8;

/// Tolerance for the relation check of the construction.
pub const RELATION_TOL: f64 = 1e-9;

/// Generator index of the inverse: `g_{k+4} = g_k⁻¹` for the octagon pairings.
pub fn inverse_letter(k: u8) -> u8 {
    (k + 4) % GENERATOR_COUNT as u8
}

/// Cocompact Fuchsian group of a genus-2 surface, with its Dirichlet octagon at `i`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuchsianSurface {
    pub generators: Vec<GroupElement>,
    /// Relation word as generator indices; the product is the identity.
    pub relation: Vec<u8>,
    pub genus: u32,
    pub systole: f64,
    /// Side `k` of the octagon is the bisector of `i` and `g_k·i`.
    #[serde(skip)]
    side_normals: Vec<Vec3>,
    #[serde(skip)]
    isometries: Vec<Isometry>,
    #[serde(skip)]
    inverse_isometries: Vec<Isometry>,
}

impl FuchsianSurface {
    /// Relation product residual in the sign quotient.
    pub fn relation_residual(&self) -> f64 {
        self.evaluate(&self.relation).identity_residual()
    }

    pub fn evaluate(&self, word: &[u8]) -> GroupElement {
        word.iter().fold(GroupElement::identity(), |acc, &k| {
            acc * self.generators[k as usize]
        })
    }

    pub fn generator(&self, k: u8) -> &GroupElement {
        &self.generators[k as usize]
    }

    pub fn isometry(&self, k: u8) -> &Isometry {
        &self.isometries[k as usize]
    }

    pub fn inverse_isometry(&self, k: u8) -> &Isometry {
        &self.inverse_isometries[k as usize]
    }

    /// Unit normals of the octagon sides; the octagon is `{x : ⟨x, n_k⟩ ≥ 0}`.
    pub fn side_normals(&self) -> &[Vec3] {
        &self.side_normals
    }

    pub fn side_line(&self, k: u8) -> Line {
        Line {
            normal: self.side_normals[k as usize],
        }
    }

    /// Distance from the center to the sides.
    pub fn inradius(&self) -> f64 {
        0.5 * super::minkowski::displacement(&self.generators[0])
    }

    /// Distance from the center to the vertices: `cosh R = cot²(π/8)`.
    pub fn circumradius(&self) -> f64 {
        let cot = 1.0 / (PI / 8.0).tan();
        (cot * cot).acosh()
    }

    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        self.side_normals.iter().all(|n| n.lorentz(p) >= -tol)
    }

    /// Translates a point into the octagon by greedy side reflections, returning
    /// the reduced point and the element `h` with `h·(reduced) = p`.
    pub fn reduce_point(&self, p: &Vec3, max_steps: usize) -> Option<(Vec3, GroupElement)> {
        let mut q = *p;
        let mut h = GroupElement::identity();
        for _ in 0..max_steps {
            // the most violated side
            let (k, v) = self
                .side_normals
                .iter()
                .enumerate()
                .map(|(k, n)| (k, n.lorentz(&q)))
                .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
            if v >= -1e-12 {
                return Some((q, h));
            }
            // q lies beyond side k, i.e. in the tile g_k·D
            q = self.inverse_isometries[k].apply(&q).normalize_point();
            h = h * self.generators[k];
        }
        None
    }
}

/// Builds the genus-2 surface from the regular octagon with vertex angle π/4.
///
/// `g_k = ρᵏ T ρ⁻ᵏ` with `ρ` the rotation by π/4 about `i` and `T` the
/// translation along the imaginary axis by twice the inradius, so `g_k` maps the
/// side opposite to side `k` onto side `k`.
pub fn build_genus2_surface() -> Result<FuchsianSurface> {
    let cot = 1.0 / (PI / 8.0).tan();
    // cosh(inradius) = cot(π/8), so |tr T| = 2·cot(π/8) = 2(1 + √2)
    let translation = 2.0 * cot.acosh();
    let t = frame_flow(FrameGenerator::X, translation);
    let generators: Vec<GroupElement> = (0..GENERATOR_COUNT)
        .map(|k| {
            // frame_flow(V, θ) rotates about i by θ
            let rho = frame_flow(FrameGenerator::V, PI / 4.0 * k as f64);
            rho * t * rho.inverse()
        })
        .collect();
    let relation = vec![0, 3, 6, 1, 4, 7, 2, 5];
    let systole = generators
        .iter()
        .filter_map(|g| classify_and_length(g).length())
        .fold(f64::INFINITY, f64::min);
    let center = Vec3::CENTER;
    let side_normals = generators
        .iter()
        .map(|g| (center - orbit_point(g)).normalize_spacelike())
        .collect();
    let isometries = generators.iter().map(Isometry::from_group).collect();
    let inverse_isometries = generators
        .iter()
        .map(|g| Isometry::from_group(&g.inverse()))
        .collect();
    let surface = FuchsianSurface {
        generators,
        relation,
        genus: 2,
        systole,
        side_normals,
        isometries,
        inverse_isometries,
    };
    let residual = surface.relation_residual();
    if residual > RELATION_TOL {
        return Err(LabError::ConstructionCheck {
            residual,
            tolerance: RELATION_TOL,
        });
    }
    if surface
        .generators
        .iter()
        .any(|g| !matches!(g.classify(), Classification::Hyperbolic { .. }))
    {
        return Err(LabError::ConstructionCheck {
            residual: f64::NAN,
            tolerance: RELATION_TOL,
        });
    }
    Ok(surface)
}
