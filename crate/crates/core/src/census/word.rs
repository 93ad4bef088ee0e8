//! Cyclic words over a symmetric alphabet of `2r` letters, letter `k` having inverse `(k + r) mod 2r`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<u8>,
    /// Half the alphabet size.
    pub rank: u8,
}

impl Word {
    pub fn new(letters: Vec<u8>, rank: u8) -> Self {
        debug_assert!(letters.iter().all(|&l| l < 2 * rank));
        Word { letters, rank }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse_letter(&self, l: u8) -> u8 {
        (l + self.rank) % (2 * self.rank)
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|&l| self.inverse_letter(l)).collect();
        Word { letters, rank: self.rank }
    }

    /// Freely and cyclically reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        let n = self.letters.len();
        (0..n).all(|i| {
            let next = self.letters[(i + 1) % n];
            n == 1 || next != self.inverse_letter(self.letters[i])
        })
    }

    pub fn cyclic_reduction(&self) -> Word {
        let mut stack: Vec<u8> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&self.inverse_letter(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        let (mut i, mut j) = (0, stack.len());
        while j >= i + 2 && stack[j - 1] == self.inverse_letter(stack[i]) {
            i += 1;
            j -= 1;
        }
        Word { letters: stack[i..j].to_vec(), rank: self.rank }
    }

    /// Smallest `p` dividing the length with the word `p`-periodic.
    pub fn period(&self) -> usize {
        let n = self.letters.len();
        (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.letters[i] == self.letters[i - p]))
            .unwrap_or(0)
    }

    /// Not a proper power.
    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && self.period() == self.len()
    }

    /// Lexicographically least rotation (two-pointer minimal cyclic shift).
    pub fn min_rotation(&self) -> Word {
        let s = &self.letters;
        let n = s.len();
        let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
        while i < n && j < n && k < n {
            let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        let start = i.min(j);
        let letters = (0..n).map(|t| s[(start + t) % n]).collect();
        Word { letters, rank: self.rank }
    }

    /// Canonical representative of the unoriented class: least over rotations and inversion.
    pub fn canonical_unoriented(&self) -> Word {
        let a = self.cyclic_reduction().min_rotation();
        let b = self.cyclic_reduction().inverse().min_rotation();
        a.min(b)
    }

    /// Canonical representative of the oriented conjugacy class.
    pub fn canonical(&self) -> Word {
        self.cyclic_reduction().min_rotation()
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word { letters: self.letters.repeat(k), rank: self.rank }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_min_rotation(w: &[u8]) -> Vec<u8> {
        (0..w.len().max(1))
            .map(|r| w.iter().cycle().skip(r).take(w.len()).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    #[test]
    fn reduction_examples() {
        // b a A a b B -> b a
        let w = Word::new(vec![1, 0, 2, 0, 1, 3], 2);
        assert_eq!(w.cyclic_reduction().letters, vec![1, 0]);
        // A b a -> b
        assert_eq!(Word::new(vec![2, 1, 0], 2).cyclic_reduction().letters, vec![1]);
        assert_eq!(Word::new(vec![0, 2], 2).cyclic_reduction().letters, Vec::<u8>::new());
        assert!(Word::new(vec![0, 1, 0, 1], 2).period() == 2);
        assert!(!Word::new(vec![0, 0], 2).is_primitive());
        assert!(Word::new(vec![0, 1], 2).is_primitive());
    }

    proptest! {
        #[test]
        fn min_rotation_matches_naive(w in proptest::collection::vec(0u8..4, 0..12)) {
            let word = Word::new(w.clone(), 2);
            prop_assert_eq!(word.min_rotation().letters, naive_min_rotation(&w));
        }

        #[test]
        fn canonical_is_idempotent_and_rotation_invariant(
            w in proptest::collection::vec(0u8..8, 1..14), r in 0usize..14
        ) {
            let word = Word::new(w.clone(), 4);
            let c = word.canonical();
            prop_assert_eq!(c.canonical(), c.clone());
            let n = w.len();
            let rotated = Word::new((0..n).map(|i| w[(i + r) % n]).collect(), 4);
            if word.is_cyclically_reduced() {
                prop_assert_eq!(rotated.canonical(), c);
            }
        }

        #[test]
        fn inversion_pairs_oriented_classes(w in proptest::collection::vec(0u8..4, 1..10)) {
            let word = Word::new(w, 2);
            prop_assert_eq!(word.canonical_unoriented(), word.inverse().canonical_unoriented());
        }
    }
}
