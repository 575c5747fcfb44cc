//! Integer multi-indices and the small combinatorial enumerations built on
//! them: compositions of an order `j` into `n` nonnegative parts and the
//! sign vectors `{+1, -1}^n`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A vector of `n` integers indexing a Fourier mode or a derivative order.
///
/// Ordering is lexicographic, which fixes the canonical order of every
/// serialized coefficient map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Sum of entries, the order `|α|` of a derivative index.
    pub fn order(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `|k|₁ = Σ |k_p|`.
    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|k| k.unsigned_abs()).sum()
    }

    /// `max_p |k_p|`.
    pub fn max_norm(&self) -> u64 {
        self.0.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Componentwise residue modulo `m`, each entry in `0..m`.
    pub fn rem_euclid(&self, m: i64) -> MultiIndex {
        MultiIndex(self.0.iter().map(|k| k.rem_euclid(m)).collect())
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(v: [i64; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Iterator over all compositions of `total` into `parts` nonnegative
/// integers, in lexicographic order. There are `C(total+parts-1, parts-1)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<i64>>,
    total: i64,
}

pub fn compositions(total: u32, parts: usize) -> Compositions {
    assert!(parts >= 1, "compositions need at least one part");
    let mut first = vec![0i64; parts];
    first[parts - 1] = total as i64;
    Compositions {
        current: Some(first),
        total: total as i64,
    }
}

impl Iterator for Compositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let cur = self.current.take()?;
        let out = MultiIndex(cur.clone());
        let n = cur.len();
        if n > 1 {
            // Advance to the lexicographic successor: bump the rightmost
            // position (other than the last) that still has room.
            let mut next = cur;
            let mut p = n - 1;
            while p > 0 {
                p -= 1;
                let prefix: i64 = next[..=p].iter().sum();
                if prefix < self.total {
                    next[p] += 1;
                    next[p + 1..].fill(0);
                    let used: i64 = next[..n - 1].iter().sum();
                    next[n - 1] = self.total - used;
                    self.current = Some(next);
                    break;
                }
            }
        }
        Some(out)
    }
}

/// All sign vectors in `{+1, -1}^n`, ordered lexicographically with `+1`
/// preceding `-1`. This order decides which slot wins when a fold visits the
/// same target index more than once.
pub fn sign_vectors(n: usize) -> Vec<Vec<i8>> {
    let count = 1usize << n;
    (0..count)
        .map(|mask| {
            (0..n)
                .map(|p| if mask >> (n - 1 - p) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn composition_counts_match_binomial() {
        for parts in 1..=4usize {
            for total in 0..=7u32 {
                let all: Vec<_> = compositions(total, parts).collect();
                assert_eq!(
                    all.len() as u64,
                    binomial(total as u64 + parts as u64 - 1, parts as u64 - 1)
                );
                assert!(all
                    .iter()
                    .all(|a| a.order() == total as i64 && a.is_nonnegative()));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn single_part_composition() {
        let all: Vec<_> = compositions(5, 1).collect();
        assert_eq!(all, vec![MultiIndex::from([5])]);
    }

    #[test]
    fn sign_vector_order() {
        assert_eq!(sign_vectors(1), vec![vec![1], vec![-1]]);
        assert_eq!(
            sign_vectors(2),
            vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]
        );
    }

    #[test]
    fn lexicographic_order() {
        let a = MultiIndex::from([1, -2]);
        let b = MultiIndex::from([1, 0]);
        assert!(a < b);
        assert_eq!(a.to_string(), "(1,-2)");
        assert_eq!(
            MultiIndex::from([-3, 7]).rem_euclid(2),
            MultiIndex::from([1, 1])
        );
    }
}
