//! Crossings of a geodesic trajectory with the lifts of `c`, followed tile by
//! tile in the octagon.

use serde::{Deserialize, Serialize};

use super::domain::{intersection, tangent_at, TIE_TOL};
use super::orbit_type::Geodesic;
use crate::cocycle::ReturnSequence;
use crate::error::{invalid, LabError, Result};
use crate::hyperbolic::minkowski::{Frame, Isometry};
use crate::hyperbolic::surface::GENERATOR_COUNT;
use crate::hyperbolic::{FuchsianSurface, GroupElement};

pub const MAX_TRACE_LENGTH: f64 = 50.0;

/// Tiles crossed per unit length stay well below this.
const STEPS_PER_UNIT: f64 = 200.0;

/// Transverse crossing at trajectory time `time`; `w = θ − π/2` with `θ` the
/// angle from the trajectory to the oriented lift of `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub time: f64,
    pub w: f64,
}

/// Crossings with `|w| < window` along the trajectory of the frame `start` up to time `length`.
pub fn crossing_trace(
    surface: &FuchsianSurface,
    start: &GroupElement,
    length: f64,
    c: &Geodesic,
    window: f64,
) -> Result<Vec<Crossing>> {
    if !(length >= 0.0) || length > MAX_TRACE_LENGTH {
        return Err(invalid("length", format!("must lie in [0, {MAX_TRACE_LENGTH}]")));
    }
    let frame = Frame::from_group(start);
    let (_, h) = surface
        .reduce_point(&frame.point, 10_000)
        .ok_or(LabError::BudgetExceeded { what: "point reduction steps", limit: 10_000 })?;
    let mut frame = frame.transform(&Isometry::from_group(&h.inverse())).renormalized();
    let budget = (STEPS_PER_UNIT * (length + 1.0)) as usize;
    let mut elapsed = 0.0;
    let mut entry: Option<u8> = None;
    let mut out = Vec::new();
    for _ in 0..budget {
        let (exit, t_exit) = exit_side(surface, &frame, entry)?;
        let t_end = t_exit.min(length - elapsed);
        for (_, lift) in &c.lifts {
            let Some(x) = intersection(&frame.line(), &lift.line()) else {
                continue;
            };
            let t = x.lorentz(&frame.dir).asinh();
            let last = t_end == t_exit;
            if t < -TIE_TOL || t > t_end || (last && t >= t_exit - TIE_TOL) {
                continue;
            }
            let u = frame.flow(t).dir;
            let theta = u.lorentz(&tangent_at(lift, &x)).clamp(-1.0, 1.0).acos();
            let w = theta - std::f64::consts::FRAC_PI_2;
            if w.abs() < window {
                out.push(Crossing { time: elapsed + t.max(0.0), w });
            }
        }
        if elapsed + t_exit >= length {
            out.sort_by(|a, b| a.time.total_cmp(&b.time));
            return Ok(out);
        }
        elapsed += t_exit;
        frame = frame.flow(t_exit).transform(surface.inverse_isometry(exit)).renormalized();
        entry = Some(crate::hyperbolic::surface::inverse_letter(exit));
    }
    Err(LabError::BudgetExceeded { what: "trajectory tile steps", limit: budget })
}

/// First side the trajectory leaves through, ties going to the smallest index.
fn exit_side(surface: &FuchsianSurface, frame: &Frame, entry: Option<u8>) -> Result<(u8, f64)> {
    let mut best: Option<(u8, f64)> = None;
    for k in 0..GENERATOR_COUNT as u8 {
        if Some(k) == entry {
            continue;
        }
        let n = &surface.side_normals()[k as usize];
        let (a, b) = (frame.point.lorentz(n), frame.dir.lorentz(n));
        if b >= 0.0 || a.abs() >= b.abs() {
            continue;
        }
        let t = (-a / b).atanh().max(0.0);
        if best.map_or(true, |(_, tb)| t < tb - TIE_TOL) {
            best = Some((k, t));
        }
    }
    best.ok_or_else(|| LabError::Geometry("trajectory has no exit side from the octagon".into()))
}

/// Return sequence of consecutive crossings: flight since the previous crossing, then `w`.
pub fn traced_sequence(crossings: &[Crossing]) -> Result<ReturnSequence> {
    let steps = crossings.windows(2).map(|p| (p[1].time - p[0].time, p[1].w)).collect();
    ReturnSequence::traced(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::frames::{frame_flow, FrameGenerator};
    use crate::hyperbolic::build_genus2_surface;
    use std::f64::consts::FRAC_PI_2;

    fn setup() -> (FuchsianSurface, Geodesic) {
        let s = build_genus2_surface().unwrap();
        let c = Geodesic::new(&s, &[0]).unwrap();
        (s, c)
    }

    /// Frame at `i` whose geodesic is the axis of `g₀`.
    fn along_c(s: &FuchsianSurface) -> GroupElement {
        let f = crate::hyperbolic::minkowski::axis(s.generator(0)).unwrap();
        let base = Frame::BASE;
        // rotate the base frame about i onto the axis direction
        let angle = base.dir.cross(&f.dir).lorentz(&base.point).atan2(base.dir.lorentz(&f.dir));
        let g = frame_flow(FrameGenerator::V, -angle);
        if Frame::from_group(&g).dir.lorentz(&f.dir) > 0.999 {
            g
        } else {
            frame_flow(FrameGenerator::V, angle)
        }
    }

    #[test]
    fn trajectory_along_c_has_no_transverse_crossing() {
        let (s, c) = setup();
        let g = along_c(&s);
        assert!((Frame::from_group(&g).dir.lorentz(&c.members[0].1.dir) - 1.0).abs() < 1e-9);
        assert!(crossing_trace(&s, &g, 40.0, &c, 0.5).unwrap().is_empty());
    }

    #[test]
    fn orthogonal_trajectory_crosses_once_at_right_angle() {
        let (s, c) = setup();
        let g = along_c(&s) * frame_flow(FrameGenerator::V, FRAC_PI_2);
        let hits = crossing_trace(&s, &g, 1.0, &c, 0.1).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].time.abs() < 1e-12 && hits[0].w.abs() < 1e-9);
    }

    #[test]
    fn flights_recorded_from_crossings() {
        let (s, c) = setup();
        let g = along_c(&s) * frame_flow(FrameGenerator::V, 1.2);
        let hits = crossing_trace(&s, &g, 50.0, &c, FRAC_PI_2).unwrap();
        assert!(hits.len() >= 2);
        assert!(hits.windows(2).all(|p| p[1].time > p[0].time));
        let seq = traced_sequence(&hits).unwrap();
        assert_eq!(seq.steps.len(), hits.len() - 1);
    }

    /// Shortest distance between distinct lifts of `c` over a ball of translates.
    fn lift_separation(s: &FuchsianSurface, c: &Geodesic) -> f64 {
        let line = c.members[0].1.line();
        let ball = crate::census::tile_ball(s, 6.0).unwrap();
        ball.elements
            .iter()
            .map(|h| line.transform(&Isometry::from_group(h)))
            .filter(|l| !l.coincides(&line, 1e-9))
            .map(|l| {
                assert!(!l.crosses(&line), "lifts of a simple geodesic never cross");
                l.separation(&line)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn flights_exceed_the_lift_separation() {
        use rand::{Rng, SeedableRng};
        let (s, c) = setup();
        let floor = lift_separation(&s, &c);
        assert!((floor - (3.0 + 2.0 * 2f64.sqrt()).acosh()).abs() < 1e-9, "{floor}");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut shortest = f64::INFINITY;
        for _ in 0..200 {
            let g = frame_flow(FrameGenerator::V, rng.gen_range(0.0..6.3))
                * frame_flow(FrameGenerator::X, rng.gen_range(0.0..3.0));
            let hits = crossing_trace(&s, &g, 50.0, &c, FRAC_PI_2).unwrap();
            shortest = hits.windows(2).map(|p| p[1].time - p[0].time).fold(shortest, f64::min);
        }
        assert!(shortest >= floor - 1e-9, "{shortest} < {floor}");
        // crossings of c come closer together than its length
        assert!(floor < s.systole);
    }
}
