//! Census of oriented closed geodesics of the octagon surface by length.
//!
//! Every class of length `ℓ ≤ L` has a representative `γ` whose perturbed axis
//! meets `D`; then `d(i, γ·i) ≤ ρ` with `sinh(ρ/2) = cosh(R) sinh(L/2)`, `R`
//! the circumradius. Representatives are taken from the tiles in that ball and
//! identified by the exit-side sequence of their axis walk.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dd::DdMat;
use super::domain::{walk_dd, Domain};
use super::orbit_type::OrbitType;
use super::table::CensusTable;
use super::word::Word;
use crate::error::{invalid, LabError, Result};
use crate::hyperbolic::group::translation_length;
use crate::hyperbolic::minkowski::{axis, orbit_point};
use crate::hyperbolic::surface::GENERATOR_COUNT;
use crate::hyperbolic::{FuchsianSurface, GroupElement};

pub const MAX_CENSUS_LENGTH: f64 = 14.0;

/// Tiles held in memory at once.
const TILE_BUDGET: usize = 30_000_000;

const WALK_BUDGET: usize = 10_000;

/// Relative trace agreement between a walk word and its element.
const TRACE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Oriented cutting sequence of the primitive root, minimal over rotations.
    pub class: Word,
    pub trace: f64,
    pub length: f64,
    /// Power of the primitive root.
    pub multiplicity: usize,
    pub primitive: bool,
    pub orbit_type: Option<OrbitType>,
}

impl CensusEntry {
    /// Cutting sequence of the class itself, the root sequence repeated.
    pub fn word(&self) -> Word {
        self.class.repeat(self.multiplicity)
    }
}

/// Tiles whose center lies within a radius of `i`, as a breadth-first tree
/// over the side pairings.
#[derive(Debug, Clone)]
pub struct TileBall {
    pub elements: Vec<GroupElement>,
    /// Parent tile and the side crossed from it; the root is its own parent.
    parents: Vec<(u32, u8)>,
}

impl TileBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Generator word of tile `i`.
    pub fn word(&self, mut i: usize) -> Vec<u8> {
        let mut word = Vec::new();
        while i != 0 {
            let (parent, k) = self.parents[i];
            word.push(k);
            i = parent as usize;
        }
        word.reverse();
        word
    }
}

/// Group elements whose tile center lies within `radius` of `i`.
pub fn tile_ball(surface: &FuchsianSurface, radius: f64) -> Result<TileBall> {
    let bound = radius.cosh() * (1.0 + 1e-12);
    let mut ball = TileBall { elements: vec![GroupElement::identity()], parents: vec![(0, 0)] };
    // distinct centers are at least 2·inradius apart, and the planar projection
    // does not shrink hyperbolic distances, so a cell of side 2 holds one center
    let mut cells: HashMap<(i64, i64), usize> = HashMap::new();
    cells.insert((0, 0), 0);
    let cell = |x: f64| (x / 2.0).floor() as i64;
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let start = ball.len();
        for idx in frontier.clone() {
            let h = ball.elements[idx];
            for k in 0..GENERATOR_COUNT as u8 {
                let next = h * *surface.generator(k);
                let p = orbit_point(&next);
                if p.0[0] > bound {
                    continue;
                }
                let (x, y) = (p.0[1], p.0[2]);
                let key = (cell(x), cell(y));
                let seen = (-1..=1).any(|dx| {
                    (-1..=1).any(|dy| {
                        cells.get(&(key.0 + dx, key.1 + dy)).is_some_and(|&j| {
                            let q = orbit_point(&ball.elements[j]);
                            (q.0[1] - x).hypot(q.0[2] - y) < 0.5
                        })
                    })
                });
                if !seen {
                    cells.insert(key, ball.len());
                    ball.elements.push(next);
                    ball.parents.push((idx as u32, k));
                    if ball.len() > TILE_BUDGET {
                        return Err(LabError::BudgetExceeded { what: "tiles in the census ball", limit: TILE_BUDGET });
                    }
                }
            }
        }
        frontier = start..ball.len();
    }
    Ok(ball)
}

/// Ball radius containing a representative of every class of length `≤ max_length`.
pub fn representative_radius(surface: &FuchsianSurface, max_length: f64) -> f64 {
    2.0 * (surface.circumradius().cosh() * (max_length / 2.0).sinh()).asinh()
}

/// All oriented hyperbolic conjugacy classes of length `≤ max_length`, sorted by length.
pub fn enumerate_classes(surface: &FuchsianSurface, max_length: f64) -> Result<Vec<CensusEntry>> {
    if !(max_length > 0.0) || max_length > MAX_CENSUS_LENGTH {
        return Err(invalid("max_length", format!("must lie in (0, {MAX_CENSUS_LENGTH}]")));
    }
    if max_length < surface.systole {
        return Ok(Vec::new());
    }
    let ball = tile_ball(surface, representative_radius(surface, max_length))?;
    let domain = Domain::new(surface);
    let reach = surface.circumradius() + 1e-6;
    let found: Vec<(Vec<u8>, usize, f64, f64)> = (0..ball.len())
        .into_par_iter()
        .filter_map(|i| {
            let g = &ball.elements[i];
            let length = g.classify().length()?;
            if length > max_length + 1e-9 || axis(g)?.line().distance_to_center() > reach {
                return None;
            }
            classify_candidate(&domain, &ball.word(i), max_length).transpose()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut classes: BTreeMap<(Vec<u8>, usize), (f64, f64)> = BTreeMap::new();
    for (sides, k, trace, length) in found {
        classes.entry((sides, k)).or_insert((trace, length));
    }
    let mut entries: Vec<CensusEntry> = classes
        .into_iter()
        .map(|((sides, k), (trace, length))| CensusEntry {
            class: Word::new(sides, (GENERATOR_COUNT / 2) as u8),
            trace,
            length,
            multiplicity: k,
            primitive: k == 1,
            orbit_type: None,
        })
        .collect();
    entries.sort_by(|a, b| a.length.total_cmp(&b.length).then_with(|| a.class.cmp(&b.class)));
    Ok(entries)
}

/// Class key of a tile element whose perturbed axis meets `D`.
fn classify_candidate(domain: &Domain, word: &[u8], max_length: f64) -> Result<Option<(Vec<u8>, usize, f64, f64)>> {
    let g = domain.evaluate(word);
    let trace = g.trace().hi.abs();
    let length = translation_length(trace);
    if length > max_length {
        return Ok(None);
    }
    let Some(walk) = walk_dd(domain, &g, 1.0, WALK_BUDGET)? else {
        return Ok(None);
    };
    let root = domain.evaluate(&walk.sides);
    let root_length = translation_length(root.trace().hi.abs());
    let k = (length / root_length).round().max(1.0) as usize;
    let expected = (0..k).fold(DdMat::IDENTITY, |acc, _| acc * root).trace().hi.abs();
    if (expected - trace).abs() > TRACE_TOL * trace {
        return Err(LabError::Geometry(format!(
            "cutting sequence {:?}^{k} has |tr| {expected}, element has {trace}",
            walk.sides
        )));
    }
    let word = Word::new(walk.sides, (GENERATOR_COUNT / 2) as u8).min_rotation();
    Ok(Some((word.letters, k, trace, length)))
}

/// Cumulative table `N(T)` of the classes passing `keep`.
pub fn geodesic_table(
    entries: &[CensusEntry],
    edges: Vec<f64>,
    filter: &str,
    keep: impl Fn(&CensusEntry) -> bool,
) -> Result<CensusTable> {
    CensusTable::from_values(entries.iter().filter(|e| keep(e)).map(|e| (e.length, 1)), edges, filter)
}
