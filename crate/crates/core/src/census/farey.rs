//! Rational-slope tori of the surgered fiber flow, enumerated by Stern–Brocot
//! descent and ordered by the period of their closed Reeb orbits.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::{CensusTable, LinearFit};
use crate::error::{invalid, LabError, Result};
use crate::surgery::Beta0;

pub const FAREY_CSV_HEADER: &str = "p,q_w,w,period";

/// Fiber period of the flow before surgery.
pub const FIBER_PERIOD: f64 = 2.0 * PI;

/// Torus `{f(w) = p/q_w}` foliated by closed orbits of period `P(w) = 2π q_w D(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FareyEntry {
    /// Signed like the twist.
    pub p: i64,
    pub q_w: u64,
    pub w: f64,
    pub period: f64,
    /// `|f(w) − p/q_w|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FareyCensus {
    /// Sorted by period.
    pub entries: Vec<FareyEntry>,
    /// Tori with period `≤ T`.
    pub tori: CensusTable,
    /// `Σ 2⌊T/P(w)⌋ + C·⌊T/2π⌋`: two orbits per torus period multiple plus the
    /// fibers over the critical points.
    pub orbits: CensusTable,
    pub critical_points: u64,
}

impl FareyCensus {
    pub fn csv(&self) -> String {
        let mut out = String::from(FAREY_CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&format!("{},{},{},{}\n", e.p, e.q_w, e.w, e.period));
        }
        out
    }

    /// Slope of `log N_tori` against `log T` over `[lo, hi]`.
    pub fn torus_exponent(&self, lo: f64, hi: f64) -> Result<LinearFit> {
        self.tori.polynomial_fit(lo, hi)
    }
}

/// Visits the reduced fractions in `(0, q)` with denominator `≤ max_den`,
/// integer points first, then each unit interval in Stern–Brocot order.
fn visit_fractions(q: u64, max_den: u64, mut visit: impl FnMut(u64, u64)) {
    for j in 1..q {
        visit(j, 1);
    }
    let mut stack: Vec<(u64, u64, u64, u64)> = Vec::new();
    for j in 0..q {
        stack.push((j, 1, j + 1, 1));
        while let Some((a, b, c, d)) = stack.pop() {
            let (num, den) = (a + c, b + d);
            if den > max_den {
                continue;
            }
            visit(num, den);
            stack.push((num, den, c, d));
            stack.push((a, b, num, den));
        }
    }
}

/// Reduced fractions `p/q_w ∈ (0, q)` with `q_w ≤ max_den`, in increasing order.
pub fn farey_fractions(q: u64, max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    visit_fractions(q, max_den, |p, d| out.push((p, d)));
    out.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    out
}

pub fn farey_count(q: u64, max_den: u64) -> u64 {
    let mut n = 0;
    visit_fractions(q, max_den, |_, _| n += 1);
    n
}

/// `q·Σ_{k=2}^{Q} φ(k) + (q − 1)`, with the totients from a sieve.
pub fn farey_count_oracle(q: u64, max_den: u64) -> u64 {
    if q == 0 {
        return 0;
    }
    let n = max_den as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    q * phi.iter().skip(2).sum::<u64>() + (q - 1)
}

/// Tori of period `≤ t_max`, tabulated at `edges` (which must not exceed `t_max`).
pub fn farey_census(beta: &Beta0, t_max: f64, edges: Vec<f64>, critical_points: u64) -> Result<FareyCensus> {
    let twist = &beta.twist;
    if twist.q == 0 || !(twist.inf_df() * (twist.q as f64) >= 0.0) {
        return Err(LabError::NonMonotoneProfile);
    }
    if !(t_max > 0.0) || edges.last().is_some_and(|e| *e > t_max) {
        return Err(invalid("t_max", "must be positive and cover every bucket edge"));
    }
    // P(w) ≥ 2π q_w min D
    let max_den = (t_max / (2.0 * PI * beta.contact_margin)).floor() as u64;
    let sign = twist.q.signum();
    let fractions = farey_fractions(twist.q.unsigned_abs(), max_den);
    let mut entries: Vec<FareyEntry> = fractions
        .par_iter()
        .filter_map(|&(p, q_w)| {
            let target = sign as f64 * p as f64 / q_w as f64;
            let w = twist.solve(target)?;
            let period = beta.period(w, q_w);
            (period <= t_max).then(|| FareyEntry {
                p: sign * p as i64,
                q_w,
                w,
                period,
                residual: (twist.f(w) - target).abs(),
            })
        })
        .collect();
    entries.sort_by(|a, b| a.period.total_cmp(&b.period).then(a.q_w.cmp(&b.q_w)).then(a.p.cmp(&b.p)));
    let tori = CensusTable::from_values(entries.iter().map(|e| (e.period, 1)), edges.clone(), "farey-tori")?;
    let orbit_counts = edges
        .iter()
        .map(|&t| {
            let torus: u64 = entries.iter().map(|e| 2 * (t / e.period).floor() as u64).sum();
            torus + critical_points * (t / FIBER_PERIOD).floor() as u64
        })
        .collect();
    let orbits = CensusTable::new(edges, orbit_counts, "farey-orbits")?;
    Ok(FareyCensus { entries, tori, orbits, critical_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::{beta0_build, PlateauParams, TwistProfile};
    use proptest::prelude::*;

    #[test]
    fn small_cutoffs() {
        assert_eq!(farey_count(1, 10), 31);
        assert_eq!(farey_count(2, 10), 63);
        assert_eq!(farey_fractions(1, 3), vec![(1, 3), (1, 2), (2, 3)]);
        assert_eq!(farey_fractions(2, 2), vec![(1, 2), (1, 1), (3, 2)]);
    }

    #[test]
    fn fractions_are_reduced_and_distinct() {
        let f = farey_fractions(3, 30);
        assert!(f.windows(2).all(|p| p[0].0 * p[1].1 < p[1].0 * p[0].1));
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        assert!(f.iter().all(|&(p, q)| gcd(p, q) == 1 && p < 3 * q));
    }

    proptest! {
        #[test]
        fn count_matches_totient_sum(q in 1u64..4, cutoff in 1u64..300) {
            prop_assert_eq!(farey_count(q, cutoff), farey_count_oracle(q, cutoff));
        }
    }

    #[test]
    fn entries_solve_their_slope() {
        let twist = TwistProfile::new(1, 0.05, PlateauParams::default()).unwrap();
        let beta = beta0_build(&twist, 0.05).unwrap();
        let c = farey_census(&beta, 200.0, vec![50.0, 100.0, 200.0], 4).unwrap();
        assert!(!c.entries.is_empty());
        assert!(c.entries.iter().all(|e| e.residual <= 1e-12 && e.w.abs() < 0.05));
        assert!(c.entries.iter().all(|e| (e.period - 2.0 * PI * e.q_w as f64 * beta.d(e.w)).abs() < 1e-12));
        // the half torus f = 1/2 has the shortest period 4π D
        assert_eq!((c.entries[0].p, c.entries[0].q_w), (1, 2));
        assert!(c.orbits.counts.iter().zip(&c.tori.counts).all(|(o, t)| o >= &(2 * t)));
    }
}
