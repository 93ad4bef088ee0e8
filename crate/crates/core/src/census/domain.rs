//! Axes of group elements against the Dirichlet octagon `D`.
//!
//! Degenerate positions (axes through vertices or along sides) are resolved by
//! replacing the axis with the equidistant curve at infinitesimal signed
//! distance `σδ` along its normal. The rule is equivariant, so the sequence of
//! tiles met is the same from every conjugate and cutting sequences are canonical.
//! Whether an axis passes through a vertex is decided by its distance to the
//! vertex, which every tile along the walk sees alike.

use std::cmp::Ordering;

use super::dd::{octagon_generators, DdMat};
use crate::error::{LabError, Result};
use crate::hyperbolic::minkowski::{Frame, Isometry, Line, Vec3};
use crate::hyperbolic::surface::{inverse_letter, GENERATOR_COUNT};
use crate::hyperbolic::FuchsianSurface;

/// Incidence tolerance for lines, sides and vertices known to double precision.
pub(crate) const TIE_TOL: f64 = 1e-9;

/// Relative agreement of a conjugate with the start of its walk.
const CLOSURE_TOL: f64 = 1e-12;

/// Octagon data shared by the walks.
pub(crate) struct Domain {
    pub normals: [Vec3; GENERATOR_COUNT],
    /// Vertex between sides `k` and `k + 1`.
    pub vertices: [Vec3; GENERATOR_COUNT],
    pub generators: [DdMat; GENERATOR_COUNT],
    pub inverse_isometries: Vec<Isometry>,
}

impl Domain {
    pub fn new(surface: &FuchsianSurface) -> Self {
        let normals: [Vec3; GENERATOR_COUNT] = std::array::from_fn(|k| surface.side_normals()[k]);
        let vertices = std::array::from_fn(|k| {
            let v = normals[k].cross(&normals[(k + 1) % GENERATOR_COUNT]);
            if v.0[0] < 0.0 { -v } else { v }.normalize_point()
        });
        let inverse_isometries = (0..GENERATOR_COUNT as u8).map(|k| surface.inverse_isometry(k).clone()).collect();
        Domain { normals, vertices, generators: octagon_generators(), inverse_isometries }
    }

    pub fn evaluate(&self, word: &[u8]) -> DdMat {
        word.iter().fold(DdMat::IDENTITY, |acc, &k| acc * self.generators[k as usize])
    }

    /// Conjugate `g_k⁻¹ γ g_k`, the element seen from the tile across side `k`.
    pub fn conjugate_across(&self, gamma: &DdMat, k: u8) -> DdMat {
        let g = &self.generators[k as usize];
        g.inverse() * *gamma * *g
    }

    /// Whether adjacent sides `k`, `j` meet at a vertex on `line`.
    fn through_vertex(&self, line: &Line, k: usize, j: usize) -> bool {
        let n = GENERATOR_COUNT;
        let v = if (k + 1) % n == j {
            k
        } else if (j + 1) % n == k {
            j
        } else {
            return false;
        };
        self.vertices[v].lorentz(&line.normal).abs() < TIE_TOL
    }
}

/// Side crossing at parameter `t₀ + δ t₁` to first order in `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Event {
    side: usize,
    t0: f64,
    t1: f64,
}

fn compare(domain: &Domain, line: &Line, a: &Event, b: &Event) -> Ordering {
    let first = if domain.through_vertex(line, a.side, b.side) {
        a.t1.total_cmp(&b.t1)
    } else {
        a.t0.total_cmp(&b.t0).then(a.t1.total_cmp(&b.t1))
    };
    first.then(a.side.cmp(&b.side))
}

/// Exit side of the `σ`-perturbed line through `frame` from `D`, or `None`
/// when the perturbed curve misses `D`.
pub(crate) fn exit_side(domain: &Domain, frame: &Frame, sigma: f64) -> Option<u8> {
    let line = frame.line();
    let (p, u) = (frame.point, frame.dir);
    let mut entry: Option<Event> = None;
    let mut exit: Option<Event> = None;
    for (k, n) in domain.normals.iter().enumerate() {
        let (a, b, c) = (p.lorentz(n), u.lorentz(n), sigma * line.normal.lorentz(n));
        if a.abs() < TIE_TOL && b.abs() < TIE_TOL {
            // the axis lies on the side line
            if c < 0.0 {
                return None;
            }
            continue;
        }
        if a.abs() >= b.abs() {
            if a < 0.0 {
                return None;
            }
            continue;
        }
        let t0 = (-a / b).atanh();
        let slope = a * t0.sinh() + b * t0.cosh();
        let ev = Event { side: k, t0, t1: -c / slope };
        if b > 0.0 {
            if entry.map_or(true, |e| compare(domain, &line, &ev, &e) == Ordering::Greater) {
                entry = Some(ev);
            }
        } else if exit.map_or(true, |e| compare(domain, &line, &ev, &e) == Ordering::Less) {
            exit = Some(ev);
        }
    }
    let exit = exit?;
    match entry {
        Some(e) if compare(domain, &line, &e, &exit) != Ordering::Less => None,
        _ => Some(exit.side as u8),
    }
}

/// Axis of a hyperbolic element computed from its double-double entries.
pub(crate) fn axis_dd(m: &DdMat) -> Option<Frame> {
    let [a, b, c, d] = m.0;
    if (a + d).abs().hi <= 2.0 {
        return None;
    }
    // (g − g⁻¹)·J is fixed by S ↦ g S gᵀ; its vector is the axis normal
    let n = [c - b, -b - c, a - d];
    let norm2 = n[1] * n[1] + n[2] * n[2] - n[0] * n[0];
    if norm2.hi <= 0.0 {
        return None;
    }
    let inv = norm2.sqrt().recip();
    let n = Vec3(n.map(|x| (x * inv).hi));
    let point = (Vec3::CENTER - n * Vec3::CENTER.lorentz(&n)).normalize_point();
    let dir = point.cross(&n).normalize_spacelike();
    let moved = crate::hyperbolic::minkowski::act(&m.to_element(), &point);
    let dir = if moved.lorentz(&dir) < 0.0 { -dir } else { dir };
    Some(Frame { point, dir }.renormalized())
}

/// One period of the perturbed axis: exit sides, with the conjugator words
/// and axes of the conjugates met.
#[derive(Debug, Clone)]
pub struct ClassWalk {
    pub sides: Vec<u8>,
    pub frames: Vec<Frame>,
}

impl ClassWalk {
    /// Conjugator of member `i` relative to the start: `g_{s₀} ⋯ g_{s_{i−1}}`.
    pub fn conjugator(&self, i: usize) -> &[u8] {
        &self.sides[..i]
    }
}

/// Walks the `σ`-perturbed axis of `gamma` tile by tile until the conjugate
/// returns to `gamma`. `None` if the perturbed axis misses `D`.
pub(crate) fn walk_dd(domain: &Domain, gamma: &DdMat, sigma: f64, budget: usize) -> Result<Option<ClassWalk>> {
    let Some(mut frame) = axis_dd(gamma) else {
        return Ok(None);
    };
    let Some(mut exit) = exit_side(domain, &frame, sigma) else {
        return Ok(None);
    };
    let mut cur = *gamma;
    let mut walk = ClassWalk { sides: Vec::new(), frames: Vec::new() };
    for step in 0..budget {
        walk.frames.push(frame);
        walk.sides.push(exit);
        cur = domain.conjugate_across(&cur, exit);
        if cur.relative_distance(gamma) < CLOSURE_TOL {
            return Ok(Some(walk));
        }
        frame = axis_dd(&cur).ok_or(LabError::WalkLost { step })?;
        exit = exit_side(domain, &frame, sigma).ok_or(LabError::WalkLost { step })?;
    }
    Err(LabError::BudgetExceeded { what: "class walk steps", limit: budget })
}

/// A conjugate `h⁻¹ γ h` whose `σ`-perturbed axis meets `D`, with the word of `h`.
pub(crate) fn find_member_dd(domain: &Domain, gamma: &DdMat, sigma: f64) -> Option<(Vec<u8>, DdMat)> {
    let frame = axis_dd(gamma)?;
    // translate the axis point nearest i into D, recording the sides crossed
    let mut q = frame.point;
    let mut word = Vec::new();
    for _ in 0..10_000 {
        let (k, v) = domain
            .normals
            .iter()
            .enumerate()
            .map(|(k, n)| (k, n.lorentz(&q)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        if v >= -1e-12 {
            break;
        }
        q = domain.inverse_isometries[k].apply(&q).normalize_point();
        word.push(k as u8);
    }
    let base = word.iter().fold(*gamma, |m, &k| domain.conjugate_across(&m, k));
    let meets = |m: &DdMat| axis_dd(m).is_some_and(|f| exit_side(domain, &f, sigma).is_some());
    if meets(&base) {
        return Some((word, base));
    }
    // the perturbed curve may pass through a neighbouring tile at a vertex
    let mut frontier = vec![(word, base)];
    for _ in 0..3 {
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for k in 0..GENERATOR_COUNT as u8 {
                let c = domain.conjugate_across(m, k);
                let mut cw = w.clone();
                cw.push(k);
                if meets(&c) {
                    return Some((cw, c));
                }
                next.push((cw, c));
            }
        }
        frontier = next;
    }
    None
}

/// Word `h⁻¹ w h`.
pub(crate) fn conjugate_word(word: &[u8], h: &[u8]) -> Vec<u8> {
    h.iter().rev().map(|&k| inverse_letter(k)).chain(word.iter().copied()).chain(h.iter().copied()).collect()
}

/// Walk of the class of the generator word `word` from one of its members.
pub fn walk_class(surface: &FuchsianSurface, word: &[u8], sigma: f64, budget: usize) -> Result<Option<(Vec<u8>, ClassWalk)>> {
    let domain = Domain::new(surface);
    let gamma = domain.evaluate(word);
    let Some((h, member)) = find_member_dd(&domain, &gamma, sigma) else {
        return Ok(None);
    };
    Ok(walk_dd(&domain, &member, sigma, budget)?.map(|w| (conjugate_word(word, &h), w)))
}

/// Intersection point of two crossing lines.
pub(crate) fn intersection(a: &Line, b: &Line) -> Option<Vec3> {
    if !a.crosses(b) {
        return None;
    }
    let x = a.normal.cross(&b.normal);
    let x = if x.0[0] < 0.0 { -x } else { x };
    Some(x.normalize_point())
}

/// Unit tangent of the line of `frame` at its point `x`, oriented like `frame`.
pub(crate) fn tangent_at(frame: &Frame, x: &Vec3) -> Vec3 {
    let n = frame.line().normal;
    let v = n.cross(x).normalize_spacelike();
    if v.lorentz(&frame.forward_end()) < 0.0 {
        -v
    } else {
        v
    }
}

/// Whether `x + δv₁ + δ²v₂ + …` lies in `D` for infinitesimal `δ > 0`.
pub(crate) fn contains_displaced(domain: &Domain, x: &Vec3, dirs: &[Vec3]) -> bool {
    domain.normals.iter().all(|n| {
        std::iter::once(x)
            .chain(dirs)
            .map(|d| n.lorentz(d))
            .find(|val| val.abs() > TIE_TOL)
            .map_or(true, |val| val > 0.0)
    })
}
