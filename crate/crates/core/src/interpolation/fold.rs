//! Folding a finite spectrum onto the diagonal exponents `βr` and onto the
//! residue cube `{0, …, m−1}^n`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{FourierSeries, PolyPoint};
use crate::multi_index::{sign_vectors, MultiIndex};

/// A slot `(r, β, l)` that would have absorbed a mode already taken by an
/// earlier slot in lexicographic `(r, β, l)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedVisit {
    pub k: MultiIndex,
    pub r: u64,
    pub beta: Vec<i8>,
    pub l: Vec<u64>,
}

/// Per-`(r, β)` folded coefficients `a_{m,r,β} = Σ_l c_{β(r + m l)}`.
#[derive(Clone, Debug)]
pub struct FoldResult {
    pub m: u64,
    pub dim: usize,
    /// Nonzero sums keyed by `(r, β)`.
    pub terms: BTreeMap<(u64, Vec<i8>), Complex64>,
    /// Modes absorbed into some slot.
    pub covered_modes: BTreeSet<MultiIndex>,
    /// Modes no slot reaches: their nonzero `|k_p|` disagree modulo `m`, or a
    /// zero component sits next to a component not divisible by `m`.
    pub uncovered_modes: Vec<MultiIndex>,
    /// Duplicate visits discarded under the first-visit rule.
    pub skipped: Vec<SkippedVisit>,
}

/// The slot `(r, l)` reaching `k` with `β_p = sign(k_p)`, if any.
fn diagonal_slot(k: &MultiIndex, m: u64) -> Option<(u64, Vec<u64>)> {
    let mut r = None;
    for &kp in k.entries() {
        let a = kp.unsigned_abs();
        let rp = if kp == 0 { 0 } else { a % m };
        match r {
            None => r = Some(rp),
            Some(prev) if prev != rp => return None,
            _ => {}
        }
    }
    let r = r.unwrap_or(0);
    let l = k
        .entries()
        .iter()
        .map(|&kp| (kp.unsigned_abs() - r) / m)
        .collect();
    Some((r, l))
}

/// Folds `series` along the diagonal exponents `β(r + m l)`, `l ≥ 0`.
///
/// Every mode lands in at most one slot. Components equal to zero leave their
/// sign free; the first sign vector in enumeration order (all `+1`) keeps the
/// mode and the other visits are listed in [`FoldResult::skipped`].
pub fn diagonal_fold(series: &FourierSeries, m: u64) -> Result<FoldResult> {
    if m == 0 {
        return Err(Error::invalid("fold needs m ≥ 1"));
    }
    let dim = series.dim();
    let signs = sign_vectors(dim);
    let mut terms: BTreeMap<(u64, Vec<i8>), Complex64> = BTreeMap::new();
    let mut covered_modes = BTreeSet::new();
    let mut uncovered_modes = Vec::new();
    let mut skipped = Vec::new();
    for (k, &c) in series.iter() {
        let Some((r, l)) = diagonal_slot(k, m) else {
            uncovered_modes.push(k.clone());
            continue;
        };
        let mut first = true;
        for beta in &signs {
            let reaches = k
                .entries()
                .iter()
                .zip(beta)
                .all(|(&kp, &b)| kp == 0 || kp.signum() == b as i64);
            if !reaches {
                continue;
            }
            if first {
                *terms.entry((r, beta.clone())).or_default() += c;
                first = false;
            } else {
                skipped.push(SkippedVisit {
                    k: k.clone(),
                    r,
                    beta: beta.clone(),
                    l: l.clone(),
                });
            }
        }
        covered_modes.insert(k.clone());
    }
    terms.retain(|_, a| *a != Complex64::new(0.0, 0.0));
    Ok(FoldResult {
        m,
        dim,
        terms,
        covered_modes,
        uncovered_modes,
        skipped,
    })
}

impl FoldResult {
    /// The coefficient `a_{m,r,β}` (zero when the slot is empty).
    pub fn coeff(&self, r: u64, beta: &[i8]) -> Complex64 {
        self.terms
            .get(&(r, beta.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// Whether every mode of the folded series was absorbed.
    pub fn covers_support(&self) -> bool {
        self.uncovered_modes.is_empty()
    }

    /// `L_m(f; z)` as a Laurent polynomial, merging slots that share the
    /// exponent `βr`.
    pub fn to_poly(&self) -> InterpolantPoly {
        let modes = self.terms.iter().map(|((r, beta), &a)| {
            let e: Vec<i64> = beta.iter().map(|&b| b as i64 * *r as i64).collect();
            (MultiIndex::new(e), a)
        });
        InterpolantPoly {
            m: self.m,
            base: FourierSeries::from_accumulated(self.dim, modes)
                .expect("fold terms share the series dimension"),
        }
    }
}

/// `L_m(f; z) = Σ_r Σ_β a_{m,r,β} z^{βr}` evaluated at `p`.
pub fn eval_diagonal_poly(fold: &FoldResult, p: &PolyPoint) -> Result<Complex64> {
    fold.to_poly().base.eval_laurent(p)
}

/// A Laurent polynomial produced by a fold, together with its `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolantPoly {
    pub m: u64,
    pub base: FourierSeries,
}

/// The residue interpolant `Σ_ρ A_ρ z^ρ`, `ρ ∈ {0, …, m−1}^n`, with
/// `A_ρ = Σ_{k ≡ ρ (mod m)} c_k`. It agrees with `series` on every node of
/// the `m^n` grid.
pub fn alias_fold(series: &FourierSeries, m: u64) -> Result<FourierSeries> {
    if m == 0 {
        return Err(Error::invalid("fold needs m ≥ 1"));
    }
    let m = i64::try_from(m).map_err(|_| Error::invalid("m too large"))?;
    FourierSeries::from_accumulated(
        series.dim(),
        series.iter().map(|(k, &c)| (k.rem_euclid(m), c)),
    )
}
