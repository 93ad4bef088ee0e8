//! Conjugacy classes of the free group on `ℓ₁, ℓ₂`, excluding proper powers,
//! counted by cyclic word length.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::{least_squares, CensusTable, LinearFit};
use super::word::Word;
use crate::error::{invalid, Result};

const RANK: u8 = 2;
const ALPHABET: u8 = 2 * RANK;

/// Longest word length enumerated explicitly.
pub const MAX_LETTERS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjointCensus {
    /// `per_length[n − 1]`: primitive classes of length exactly `n`.
    pub per_length: Vec<u64>,
    pub table: CensusTable,
    /// Slope of `log(n·N_n)` against `n` over the lengths from 2 on.
    pub growth: LinearFit,
}

/// Counts primitive cyclically reduced classes of each length up to `max_letters`.
pub fn disjoint_class_census(max_letters: usize) -> Result<DisjointCensus> {
    if !(1..=MAX_LETTERS).contains(&max_letters) {
        return Err(invalid("max_letters", format!("must lie in [1, {MAX_LETTERS}]")));
    }
    let per_length: Vec<u64> = (1..=max_letters).map(count_length).collect();
    let edges = (1..=max_letters).map(|n| n as f64).collect();
    let table = CensusTable::from_values(
        per_length.iter().enumerate().map(|(i, c)| ((i + 1) as f64, *c)),
        edges,
        "primitive-free-rank2",
    )?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = per_length
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ((i + 1) as f64, (((i + 1) as f64) * *c as f64).ln()))
        .unzip();
    let growth = if xs.len() >= 2 {
        least_squares(&xs, &ys)?
    } else {
        LinearFit { slope: f64::NAN, intercept: f64::NAN, ssr: 0.0, slope_stderr: 0.0, points: xs.len() }
    };
    Ok(DisjointCensus { per_length, table, growth })
}

/// Classes of length `n`, sharded by the first two letters.
fn count_length(n: usize) -> u64 {
    let prefixes: Vec<Vec<u8>> = if n == 1 {
        (0..ALPHABET).map(|a| vec![a]).collect()
    } else {
        (0..ALPHABET)
            .flat_map(|a| (0..ALPHABET).filter(move |&b| b != (a + RANK) % ALPHABET).map(move |b| vec![a, b]))
            .collect()
    };
    prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut word = prefix;
            let mut count = 0;
            extend(&mut word, n, &mut count);
            count
        })
        .sum()
}

fn extend(word: &mut Vec<u8>, n: usize, count: &mut u64) {
    if word.len() == n {
        let w = Word::new(word.clone(), RANK);
        if w.is_cyclically_reduced() && w.is_primitive() && w.min_rotation().letters == *word {
            *count += 1;
        }
        return;
    }
    let last = *word.last().expect("nonempty prefix");
    for l in 0..ALPHABET {
        if l != (last + RANK) % ALPHABET {
            word.push(l);
            extend(word, n, count);
            word.pop();
        }
    }
}

/// Closed form: `P(n)/n` with `P(n) = Σ_{d|n} μ(d)·CR(n/d)` and
/// `CR(m) = 3ᵐ + 1 + (1 + (−1)ᵐ)` cyclically reduced words of length `m`.
pub fn primitive_class_oracle(n: usize) -> u64 {
    let cr = |m: usize| -> i128 { 3i128.pow(m as u32) + 1 + if m % 2 == 0 { 2 } else { 0 } };
    let total: i128 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) as i128 * cr(n / d)).sum();
    (total / n as i128) as u64
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_levels() {
        let c = disjoint_class_census(2).unwrap();
        assert_eq!(c.per_length, vec![4, 4]);
        assert_eq!(c.table.counts, vec![4, 8]);
    }

    #[test]
    fn enumeration_matches_the_closed_form() {
        let c = disjoint_class_census(9).unwrap();
        for (i, count) in c.per_length.iter().enumerate() {
            assert_eq!(*count, primitive_class_oracle(i + 1), "length {}", i + 1);
        }
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, m) in expected.iter().enumerate() {
            assert_eq!(mobius(i + 1), *m);
        }
    }
}
