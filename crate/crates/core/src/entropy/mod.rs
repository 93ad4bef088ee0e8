//! Entropy bookkeeping: Abramov transfer under time changes, Pesin consistency
//! of Lyapunov estimates, growth-type classification of census tables and the
//! homotopy bound-sequence calculator.

mod bounds;
mod growth;
mod pesin;
mod report;

pub use bounds::{homotopy_bound_sequence, BoundSequence, BoundSequenceParams, LowerBound};
pub use growth::{growth_type_classify, GrowthKind, GrowthLabel, MIN_BUCKETS, SSR_MARGIN};
pub use pesin::{pesin_consistency, pesin_ensemble, PesinReport, EXPONENT_FLOOR_TOL, NO_CROSSING_TOL};
pub use report::{EntropyReport, NamedLabel};

use crate::census::{least_squares, CensusTable, LinearFit};
use crate::error::{LabError, Result};

/// Entropy of the flow after a time change with mean factor `g_mean`, `h · g_mean`.
pub fn abramov_transfer(h: f64, g_mean: f64) -> Result<f64> {
    if !(g_mean > 0.0) {
        return Err(LabError::NonPositiveMean(g_mean));
    }
    Ok(h * g_mean)
}

/// Entropy estimate from a census `N_T ~ e^{hT}/(hT)`: the slope of `log(T·N_T)`
/// against `T` over `[lo, hi]`.
pub fn entropy_fit(table: &CensusTable, lo: f64, hi: f64) -> Result<LinearFit> {
    let (x, y): (Vec<f64>, Vec<f64>) = table.log_points(lo, hi).into_iter().map(|(t, n)| (t, n + t.ln())).unzip();
    least_squares(&x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_mean_is_the_identity() {
        assert_eq!(abramov_transfer(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(abramov_transfer(0.731, 1.0).unwrap(), 0.731);
    }

    #[test]
    fn nonpositive_mean_is_rejected() {
        assert_eq!(abramov_transfer(1.0, 0.0), Err(LabError::NonPositiveMean(0.0)));
        assert!(abramov_transfer(1.0, -2.0).is_err());
        assert!(abramov_transfer(1.0, f64::NAN).is_err());
    }

    #[test]
    fn entropy_fit_removes_the_prime_geodesic_prefactor() {
        let edges = crate::census::linear_edges(8.0, 12.0, 9);
        let counts = edges.iter().map(|&t: &f64| (1.7 * t).exp() / (1.7 * t)).map(|n| n.round() as u64).collect();
        let table = CensusTable::new(edges, counts, "synthetic").unwrap();
        assert!((entropy_fit(&table, 8.0, 12.0).unwrap().slope - 1.7).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn linear_in_entropy(h1 in 0.0..10.0f64, h2 in 0.0..10.0f64, g in 0.01..10.0f64, k in 0.0..5.0f64) {
            let lhs = abramov_transfer(h1 + k * h2, g).unwrap();
            let rhs = abramov_transfer(h1, g).unwrap() + k * abramov_transfer(h2, g).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
        }

        #[test]
        fn constant_rescale_scales_entropy(h in 0.0..10.0f64, s in 0.01..100.0f64) {
            // the flow of sX has constant factor s
            prop_assert_eq!(abramov_transfer(h, s).unwrap(), s * h);
        }
    }
}
