//! Cumulative count tables and the least-squares fits used on them.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, LabError, Result};

/// Ordinary least-squares line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Summed squared residuals.
    pub ssr: f64,
    /// Standard error of the slope (0 with two points).
    pub slope_stderr: f64,
    pub points: usize,
}

pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    let n = xs.len();
    if n != ys.len() || n < 2 {
        return Err(LabError::InsufficientData(format!("least squares needs two paired points, got {n} and {}", ys.len())));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(invalid("xs", "abscissae must not all coincide"));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let slope_stderr = if n > 2 { (ssr / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(LinearFit { slope, intercept, ssr, slope_stderr, points: n })
}

/// Fits attached to a table: `log N` against `T` and against `log T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableFits {
    pub exponential: LinearFit,
    pub polynomial: LinearFit,
}

/// Cumulative counts `N(T) = #{x ≤ T}` at strictly increasing bucket edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusTable {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub filter: String,
    pub fits: Option<TableFits>,
}

pub const CSV_HEADER: &str = "bucket_T,count,filter";

impl CensusTable {
    pub fn new(edges: Vec<f64>, counts: Vec<u64>, filter: impl Into<String>) -> Result<Self> {
        if edges.len() != counts.len() {
            return Err(invalid("counts", "one count per edge"));
        }
        if edges.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(invalid("edges", "bucket edges must be strictly increasing"));
        }
        if counts.windows(2).any(|p| p[1] < p[0]) {
            return Err(invalid("counts", "cumulative counts must be nondecreasing"));
        }
        Ok(CensusTable { edges, counts, filter: filter.into(), fits: None })
    }

    /// Cumulative table of `values` (each weighted by its multiplicity).
    pub fn from_values<I>(values: I, edges: Vec<f64>, filter: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, u64)>,
    {
        let mut per_bucket = vec![0u64; edges.len()];
        for (v, weight) in values {
            let idx = edges.partition_point(|e| *e < v);
            if idx < edges.len() {
                per_bucket[idx] += weight;
            }
        }
        let counts = per_bucket
            .iter()
            .scan(0u64, |acc, c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        Self::new(edges, counts, filter)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(T, log N)` for the buckets with `lo ≤ T ≤ hi` and `N > 0`.
    pub fn log_points(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        self.edges
            .iter()
            .zip(&self.counts)
            .filter(|(t, n)| **t >= lo && **t <= hi && **n > 0)
            .map(|(t, n)| (*t, (*n as f64).ln()))
            .collect()
    }

    /// Slope of `log N` against `T` over `[lo, hi]`.
    pub fn exponential_fit(&self, lo: f64, hi: f64) -> Result<LinearFit> {
        let (x, y): (Vec<f64>, Vec<f64>) = self.log_points(lo, hi).into_iter().unzip();
        least_squares(&x, &y)
    }

    /// Slope of `log N` against `log T` over `[lo, hi]`.
    pub fn polynomial_fit(&self, lo: f64, hi: f64) -> Result<LinearFit> {
        let (x, y): (Vec<f64>, Vec<f64>) =
            self.log_points(lo, hi).into_iter().map(|(t, n)| (t.ln(), n)).unzip();
        least_squares(&x, &y)
    }

    pub fn with_fits(mut self, lo: f64, hi: f64) -> Result<Self> {
        self.fits = Some(TableFits {
            exponential: self.exponential_fit(lo, hi)?,
            polynomial: self.polynomial_fit(lo, hi)?,
        });
        Ok(self)
    }

    /// Same counts at edges `T/c`.
    pub fn rescaled(&self, c: f64) -> Self {
        CensusTable {
            edges: self.edges.iter().map(|t| t / c).collect(),
            counts: self.counts.clone(),
            filter: self.filter.clone(),
            fits: None,
        }
    }

    pub fn csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for (t, n) in self.edges.iter().zip(&self.counts) {
            out.push_str(&format!("{t},{n},{}\n", self.filter));
        }
        out
    }
}

/// `n` edges evenly spaced on `[lo, hi]`.
pub fn linear_edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64).collect()
}

/// `n` edges evenly spaced in `log T` on `[lo, hi]`.
pub fn log_edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut edges: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp()).collect();
    if n > 0 {
        edges[0] = lo;
        edges[n - 1] = hi;
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_line_has_zero_residual() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let fit = least_squares(&xs, &ys).unwrap();
        assert!((fit.slope - 2.5).abs() < 1e-12);
        assert!((fit.intercept + 1.0).abs() < 1e-12);
        assert!(fit.ssr < 1e-20);
    }

    #[test]
    fn edges_must_increase() {
        assert!(CensusTable::new(vec![1.0, 1.0], vec![0, 0], "x").is_err());
        assert!(CensusTable::new(vec![1.0, 2.0], vec![3, 2], "x").is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let t = CensusTable::from_values([(0.5, 1), (1.5, 2)], vec![1.0, 2.0], "all").unwrap();
        assert_eq!(t.csv(), "bucket_T,count,filter\n1,1,all\n2,3,all\n");
    }

    proptest! {
        #[test]
        fn cumulative_counts_are_monotone(values in proptest::collection::vec(0.0f64..10.0, 0..50)) {
            let t = CensusTable::from_values(values.iter().map(|v| (*v, 1)), linear_edges(0.0, 10.0, 11), "p").unwrap();
            prop_assert!(t.counts.windows(2).all(|p| p[0] <= p[1]));
            prop_assert_eq!(*t.counts.last().unwrap(), values.len() as u64);
        }
    }
}
