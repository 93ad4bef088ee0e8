//! Orbit types relative to a simple closed geodesic `c`, by counting axis
//! crossings inside the octagon.
//!
//! A crossing of two closed geodesics lifts to pairs of crossing axes; the pair
//! is counted in the unique tile containing `x + δv + δ²w`, where `x` is the
//! crossing point, `w` the direction of the first geodesic and `v` the direction
//! of the second pointing to the left of the first.

use serde::{Deserialize, Serialize};

use super::domain::{conjugate_word, contains_displaced, intersection, tangent_at, walk_class, Domain};
use super::geodesic::enumerate_classes;
use crate::error::{LabError, Result};
use crate::hyperbolic::minkowski::Frame;
use crate::hyperbolic::surface::inverse_letter;
use crate::hyperbolic::FuchsianSurface;

const WALK_BUDGET: usize = 20_000;
const LINE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitType {
    OnTorus,
    Disjoint,
    Transverse,
    /// The walk budget ran out before a certificate was found.
    Undecided,
}

impl std::fmt::Display for OrbitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrbitType::OnTorus => "on_torus",
            OrbitType::Disjoint => "disjoint",
            OrbitType::Transverse => "transverse",
            OrbitType::Undecided => "undecided",
        })
    }
}

/// An oriented closed geodesic with its axes meeting the closed octagon.
#[derive(Debug, Clone)]
pub struct Geodesic {
    /// Generator word of the class.
    pub word: Vec<u8>,
    /// Conjugate words whose axis, pushed infinitesimally to its left, meets `D`.
    pub members: Vec<(Vec<u8>, Frame)>,
    /// Conjugate words whose axis meets the closed octagon.
    pub lifts: Vec<(Vec<u8>, Frame)>,
}

impl Geodesic {
    pub fn new(surface: &FuchsianSurface, word: &[u8]) -> Result<Self> {
        let mut sides = [Vec::new(), Vec::new()];
        for (slot, sigma) in sides.iter_mut().zip([1.0, -1.0]) {
            let (start, walk) = walk_class(surface, word, sigma, WALK_BUDGET)?.ok_or_else(|| {
                LabError::Geometry(format!("no conjugate of {word:?} has its axis in the octagon"))
            })?;
            let words: Vec<Vec<u8>> =
                (0..walk.sides.len()).map(|i| conjugate_word(&start, walk.conjugator(i))).collect();
            *slot = words.into_iter().zip(walk.frames).collect();
        }
        let [members, right] = sides;
        let mut lifts = members.clone();
        for (g, f) in right {
            if !lifts.iter().any(|(_, l)| l.line().coincides(&f.line(), LINE_TOL)) {
                lifts.push((g, f));
            }
        }
        Ok(Geodesic { word: word.to_vec(), members, lifts })
    }

    /// Whether some axis of `self` is an axis of `other`.
    pub fn shares_axis(&self, other: &Geodesic) -> bool {
        self.members
            .iter()
            .any(|(_, a)| other.lifts.iter().any(|(_, b)| a.line().coincides(&b.line(), LINE_TOL)))
    }
}

/// Crossing points of `a` with `b`, as the pairs (member of `a`, lift of `b`)
/// counted once each.
fn crossing_pairs<'a>(domain: &'a Domain, a: &'a Geodesic, b: &'a Geodesic) -> impl Iterator<Item = (usize, usize)> + 'a {
    a.members.iter().enumerate().flat_map(move |(i, (_, fa))| {
        let la = fa.line();
        b.lifts.iter().enumerate().filter_map(move |(j, (_, fb))| {
            let lb = fb.line();
            if la.coincides(&lb, LINE_TOL) {
                return None;
            }
            let x = intersection(&la, &lb)?;
            let w = tangent_at(fa, &x);
            let mut v = tangent_at(fb, &x);
            if v.lorentz(&la.normal) < 0.0 {
                v = -v;
            }
            contains_displaced(domain, &x, &[v, w]).then_some((i, j))
        })
    })
}

/// Geometric intersection number of two closed geodesics; each self-crossing
/// counts twice when `a` and `b` are the same class.
pub fn intersection_number(surface: &FuchsianSurface, a: &Geodesic, b: &Geodesic) -> usize {
    crossing_pairs(&Domain::new(surface), a, b).count()
}

pub fn self_intersection(surface: &FuchsianSurface, a: &Geodesic) -> usize {
    intersection_number(surface, a, a) / 2
}

/// Orbit type of the class of the generator word `word` relative to `c`.
pub fn classify_orbit_type(surface: &FuchsianSurface, word: &[u8], c: &Geodesic) -> OrbitType {
    let Ok(g) = Geodesic::new(surface, word) else {
        return OrbitType::Undecided;
    };
    if g.shares_axis(c) {
        OrbitType::OnTorus
    } else if intersection_number(surface, &g, c) == 0 {
        OrbitType::Disjoint
    } else {
        OrbitType::Transverse
    }
}

/// Two simple closed geodesics disjoint from `c` meeting once, given by
/// conjugates whose axes cross in the octagon; they generate the fundamental
/// group of a one-holed torus in the complement of `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handle {
    pub l1: Vec<u8>,
    pub l2: Vec<u8>,
}

impl Handle {
    /// Generator word of a word over `ℓ₁, ℓ₂, ℓ₁⁻¹, ℓ₂⁻¹` (letters 0..4).
    pub fn evaluate(&self, letters: &[u8]) -> Vec<u8> {
        let inverse = |w: &[u8]| w.iter().rev().map(|&k| inverse_letter(k)).collect::<Vec<u8>>();
        let gens = [self.l1.clone(), self.l2.clone(), inverse(&self.l1), inverse(&self.l2)];
        letters.iter().flat_map(|&l| gens[l as usize].iter().copied()).collect()
    }
}

/// Shortest handle in the complement of `c` among classes of length `≤ max_length`.
pub fn find_handle(surface: &FuchsianSurface, c: &Geodesic, max_length: f64) -> Result<Handle> {
    let entries = enumerate_classes(surface, max_length)?;
    let domain = Domain::new(surface);
    let mut simple: Vec<Geodesic> = Vec::new();
    for e in entries.iter().filter(|e| e.primitive) {
        let g = Geodesic::new(surface, &e.class.letters)?;
        if !g.shares_axis(c)
            && crossing_pairs(&domain, &g, c).next().is_none()
            && crossing_pairs(&domain, &g, &g).next().is_none()
        {
            simple.push(g);
        }
    }
    for (i, a) in simple.iter().enumerate() {
        for b in &simple[i + 1..] {
            let pairs: Vec<_> = crossing_pairs(&domain, a, b).collect();
            if let [(ia, jb)] = pairs[..] {
                return Ok(Handle { l1: a.members[ia].0.clone(), l2: b.lifts[jb].0.clone() });
            }
        }
    }
    Err(LabError::BudgetExceeded { what: "handle search length", limit: max_length as usize })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::build_genus2_surface;

    #[test]
    fn generator_lifts_include_its_own_axis() {
        let s = build_genus2_surface().unwrap();
        let c = Geodesic::new(&s, &[0]).unwrap();
        assert_eq!(c.members.len(), 1);
        assert!(c.lifts.len() >= 1);
        assert_eq!(self_intersection(&s, &c), 0);
    }

    #[test]
    fn generators_through_the_center_cross_once() {
        let s = build_genus2_surface().unwrap();
        let a = Geodesic::new(&s, &[0]).unwrap();
        let b = Geodesic::new(&s, &[1]).unwrap();
        assert_eq!(intersection_number(&s, &a, &b), intersection_number(&s, &b, &a));
        assert!(intersection_number(&s, &a, &b) >= 1);
    }

    #[test]
    fn powers_and_inverse_are_on_torus() {
        let s = build_genus2_surface().unwrap();
        let c = Geodesic::new(&s, &[0]).unwrap();
        for (i, w) in [vec![0], vec![0, 0, 0], vec![4], vec![1, 2, 0, 6, 5]].iter().enumerate() {
            assert_eq!(classify_orbit_type(&s, w, &c), OrbitType::OnTorus, "case {i}");
        }
    }

    #[test]
    fn handle_words_are_disjoint_and_generators_transverse() {
        let s = build_genus2_surface().unwrap();
        let c = Geodesic::new(&s, &[0]).unwrap();
        let handle = find_handle(&s, &c, 7.0).unwrap();
        let a = Geodesic::new(&s, &handle.l1).unwrap();
        let b = Geodesic::new(&s, &handle.l2).unwrap();
        assert_eq!(intersection_number(&s, &a, &b), 1);
        for w in [vec![0u8], vec![1], vec![0, 1], vec![0, 1, 2, 3], vec![0, 0, 1], vec![1, 1, 0, 3, 2]] {
            assert_eq!(classify_orbit_type(&s, &handle.evaluate(&w), &c), OrbitType::Disjoint, "{w:?}");
        }
        assert_eq!(classify_orbit_type(&s, &[1], &c), OrbitType::Transverse);
        // the commutator bounds the handle, a simple curve
        let boundary = Geodesic::new(&s, &handle.evaluate(&[0, 1, 2, 3])).unwrap();
        assert_eq!(self_intersection(&s, &boundary), 0);
        assert!(self_intersection(&s, &Geodesic::new(&s, &handle.evaluate(&[0, 0, 1, 1])).unwrap()) > 0);
    }
}
