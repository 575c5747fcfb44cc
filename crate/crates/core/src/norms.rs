//! L₂ norms of partial derivatives of a Fourier series and the sequence
//! `M_j(f)` they define, kept in log-domain throughout.
//!
//! For `α ∈ Z₊ⁿ` the squared norm of `∂^α f` is `Σ k^{2α} |c_k|²` taken over
//! the modes not annihilated by the derivative, i.e. excluding every `k` with
//! `k_p = 0` while `α_p ≠ 0` (and reading `0⁰ = 1`). `M_j(f)` is the largest
//! such norm over all `|α| = j`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{check_dim, FourierSeries};
use crate::multi_index::{compositions, MultiIndex};
use crate::numeric::{fmt_f64, log_sum_exp};

/// `ln M_j(f)` for `j = 0..=J_max`; entries are finite or `-∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeNormProfile {
    dim: usize,
    ln_m: Vec<f64>,
    class_r: Option<f64>,
}

impl DerivativeNormProfile {
    pub fn new(dim: usize, ln_m: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("profile dimension must be positive"));
        }
        if ln_m.is_empty() {
            return Err(Error::invalid("profile needs at least one entry"));
        }
        if let Some(j) = ln_m.iter().position(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::invalid(format!("ln M_{j} is not finite or -inf")));
        }
        Ok(DerivativeNormProfile {
            dim,
            ln_m,
            class_r: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn j_max(&self) -> usize {
        self.ln_m.len() - 1
    }

    pub fn ln_m(&self) -> &[f64] {
        &self.ln_m
    }

    pub fn get(&self, j: usize) -> Option<f64> {
        self.ln_m.get(j).copied()
    }

    pub fn class_r(&self) -> Option<f64> {
        self.class_r
    }

    /// True when every `M_j` vanishes (the zero function).
    pub fn is_zero(&self) -> bool {
        self.ln_m.iter().all(|v| *v == f64::NEG_INFINITY)
    }

    /// The profile of `c·f` given `ln|c|`: every entry shifts by `ln|c|`.
    pub fn shifted(&self, ln_scale: f64) -> DerivativeNormProfile {
        DerivativeNormProfile {
            dim: self.dim,
            ln_m: self.ln_m.iter().map(|v| v + ln_scale).collect(),
            class_r: self.class_r,
        }
    }

    /// Rescales so that `M₃ < ½`, returning the new profile and `ln c` with
    /// `c = min(1, ½·(1−10⁻⁶)/M₃)`. Profiles with `M₃ = 0` are returned as is.
    pub fn normalized_to_class(&self) -> Result<(DerivativeNormProfile, f64)> {
        let ln_m3 = self
            .get(3)
            .ok_or_else(|| Error::invalid("class normalization needs J_max ≥ 3"))?;
        if self.is_zero() {
            return Err(Error::DegenerateProfile("zero function".into()));
        }
        let ln_scale = class_log_scale(ln_m3);
        Ok((self.shifted(ln_scale), ln_scale))
    }

    /// Fits the class constant `R` in `M_j(f) ≤ R^j M_j` against a comparison
    /// sequence given as `ln M_j`, over the overlapping range `j ≥ 1`.
    /// Returns `None` when `M₀(f) > M₀`, which no `R` can repair.
    pub fn fit_class_constant(&self, comparison: &[f64]) -> Option<f64> {
        if let (Some(&own), Some(&cmp)) = (self.ln_m.first(), comparison.first()) {
            if own > cmp {
                return None;
            }
        }
        let ln_r = self
            .ln_m
            .iter()
            .zip(comparison)
            .enumerate()
            .skip(1)
            .filter(|(_, (a, _))| a.is_finite())
            .map(|(j, (a, b))| (a - b) / j as f64)
            .fold(f64::NEG_INFINITY, f64::max);
        Some(ln_r.exp().max(0.0))
    }

    pub fn with_class_constant(mut self, r: Option<f64>) -> Self {
        self.class_r = r;
        self
    }

    /// Writes `j,lnM_j` rows; `-∞` is written as `-inf`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "j,lnM_j")?;
        for (j, v) in self.ln_m.iter().enumerate() {
            writeln!(w, "{j},{}", fmt_f64(*v))?;
        }
        Ok(())
    }
}

/// `ln c` for the class rescaling `c = min(1, ½·(1−10⁻⁶)·e^{−ln M₃})`.
pub(crate) fn class_log_scale(ln_m3: f64) -> f64 {
    if ln_m3 == f64::NEG_INFINITY {
        return 0.0;
    }
    let target = 0.5f64.ln() + (1.0 - 1e-6f64).ln();
    (target - ln_m3).min(0.0)
}

/// Per-mode logarithms shared by all derivative orders.
struct ModeLogs {
    ln_abs_c: f64,
    /// `ln |k_p|`, `None` where `k_p = 0`.
    ln_abs_k: Vec<Option<f64>>,
}

fn mode_logs(series: &FourierSeries) -> Vec<ModeLogs> {
    series
        .iter()
        .map(|(k, c)| ModeLogs {
            ln_abs_c: c.norm().ln(),
            ln_abs_k: k
                .entries()
                .iter()
                .map(|&kp| (kp != 0).then(|| (kp.unsigned_abs() as f64).ln()))
                .collect(),
        })
        .collect()
}

fn ln_norm_from_logs(modes: &[ModeLogs], alpha: &[i64], scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    'modes: for m in modes {
        let mut t = 2.0 * m.ln_abs_c;
        for (&a, lk) in alpha.iter().zip(&m.ln_abs_k) {
            if a == 0 {
                continue;
            }
            match lk {
                Some(l) => t += 2.0 * a as f64 * l,
                None => continue 'modes,
            }
        }
        scratch.push(t);
    }
    0.5 * log_sum_exp(scratch)
}

/// `ln ‖∂^α f‖₂`, or `-∞` when every mode is annihilated.
pub fn derivative_l2_norm(series: &FourierSeries, alpha: &MultiIndex) -> Result<f64> {
    check_dim(series.dim(), alpha.dim())?;
    if !alpha.is_nonnegative() {
        return Err(Error::NegativeIndex(alpha.clone()));
    }
    let modes = mode_logs(series);
    Ok(ln_norm_from_logs(&modes, alpha.entries(), &mut Vec::new()))
}

/// `ln M_j(f)`: the largest `ln ‖∂^α f‖₂` over the `C(j+n−1, n−1)` orders
/// `|α| = j`.
pub fn m_j(series: &FourierSeries, j: u32) -> f64 {
    let modes = mode_logs(series);
    m_j_from_logs(&modes, series.dim(), j, &mut Vec::new())
}

fn m_j_from_logs(modes: &[ModeLogs], dim: usize, j: u32, scratch: &mut Vec<f64>) -> f64 {
    compositions(j, dim)
        .map(|alpha| ln_norm_from_logs(modes, alpha.entries(), scratch))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Tabulates `ln M_j(f)` for `j = 0..=j_max`.
pub fn build_profile(series: &FourierSeries, j_max: u32) -> DerivativeNormProfile {
    let modes = mode_logs(series);
    let mut scratch = Vec::with_capacity(modes.len());
    let ln_m = (0..=j_max)
        .map(|j| m_j_from_logs(&modes, series.dim(), j, &mut scratch))
        .collect();
    DerivativeNormProfile {
        dim: series.dim(),
        ln_m,
        class_r: None,
    }
}

/// One failed check of `|c_k| ≤ M_j(f) / Π|k_p|^{α_p}`.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientViolation {
    pub k: MultiIndex,
    pub alpha: MultiIndex,
    pub ln_abs_c: f64,
    pub ln_bound: f64,
    /// `ln_bound − ln|c_k|`; negative for a violation.
    pub slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientAudit {
    pub j: u32,
    pub checked: usize,
    pub violations: Vec<CoefficientViolation>,
}

impl CoefficientAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The derivative order used to certify the decay of `c_k`: `j` spread as
/// evenly as possible over the nonzero components of `k` (earlier
/// components take the remainder), zero elsewhere.
pub fn even_split_alpha(k: &MultiIndex, j: u32) -> MultiIndex {
    let nonzero: Vec<usize> = (0..k.dim()).filter(|&p| k.entries()[p] != 0).collect();
    let mut alpha = vec![0i64; k.dim()];
    if nonzero.is_empty() {
        return MultiIndex::new(alpha);
    }
    let base = j as i64 / nonzero.len() as i64;
    let rem = j as usize % nonzero.len();
    for (i, &p) in nonzero.iter().enumerate() {
        alpha[p] = base + i64::from(i < rem);
    }
    MultiIndex::new(alpha)
}

/// Checks the coefficient decay estimate `|c_k| ≤ M_j(f)/Π|k_p|^{α_p}` for
/// every nonzero stored mode, with `|α| = j ≥ 2n` and `α_p ≥ 2` exactly on
/// the nonzero components of `k`.
pub fn coefficient_bound_audit(
    series: &FourierSeries,
    profile: &DerivativeNormProfile,
    j: u32,
) -> Result<CoefficientAudit> {
    check_dim(series.dim(), profile.dim())?;
    let n = series.dim() as u32;
    if j < 2 * n {
        return Err(Error::invalid(format!(
            "coefficient audit needs j ≥ 2n = {}, got {j}",
            2 * n
        )));
    }
    let ln_mj = profile.get(j as usize).ok_or_else(|| {
        Error::invalid(format!(
            "profile J_max {} is below j = {j}",
            profile.j_max()
        ))
    })?;
    let tol = 1e-12 * ln_mj.abs().max(1.0);
    let mut checked = 0;
    let mut violations = Vec::new();
    for (k, c) in series.iter() {
        if k.is_zero() {
            continue;
        }
        checked += 1;
        let alpha = even_split_alpha(k, j);
        let ln_denominator: f64 = k
            .entries()
            .iter()
            .zip(alpha.entries())
            .filter(|(kp, _)| **kp != 0)
            .map(|(kp, a)| *a as f64 * (kp.unsigned_abs() as f64).ln())
            .sum();
        let ln_bound = ln_mj - ln_denominator;
        let ln_abs_c = c.norm().ln();
        let slack = ln_bound - ln_abs_c;
        if slack < -tol {
            violations.push(CoefficientViolation {
                k: k.clone(),
                alpha,
                ln_abs_c,
                ln_bound,
                slack,
            });
        }
    }
    Ok(CoefficientAudit {
        j,
        checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;

    fn series(dim: usize, modes: &[(&[i64], f64)]) -> FourierSeries {
        FourierSeries::from_modes(
            dim,
            modes
                .iter()
                .map(|(k, c)| (MultiIndex::new(k.to_vec()), Complex64::new(*c, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn derivative_norm_examples() {
        let f = series(1, &[(&[1], 1.0)]);
        assert_eq!(derivative_l2_norm(&f, &MultiIndex::from([3])).unwrap(), 0.0);

        let f = series(1, &[(&[2], 1.0)]);
        let v = derivative_l2_norm(&f, &MultiIndex::from([1])).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15);

        let f = series(2, &[(&[1, 0], 1.0)]);
        let v = derivative_l2_norm(&f, &MultiIndex::from([0, 1])).unwrap();
        assert_eq!(v, f64::NEG_INFINITY);
    }

    #[test]
    fn zero_component_with_zero_order_counts_as_one() {
        // k₂ = α₂ = 0 contributes the factor 1
        let f = series(2, &[(&[3, 0], 2.0)]);
        let v = derivative_l2_norm(&f, &MultiIndex::from([2, 0])).unwrap();
        assert!((v - (9.0f64 * 2.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn negative_alpha_rejected() {
        let f = series(1, &[(&[1], 1.0)]);
        assert!(matches!(
            derivative_l2_norm(&f, &MultiIndex::from([-1])),
            Err(Error::NegativeIndex(_))
        ));
    }

    #[test]
    fn m_j_examples() {
        let f = series(1, &[(&[1], 1.0)]);
        assert_eq!(m_j(&f, 5), 0.0);

        // α=(2,0) → 1, α=(0,2) → 16 (norm 4), α=(1,1) → excluded
        let f = series(2, &[(&[1, 0], 1.0), (&[0, 2], 1.0)]);
        assert!((m_j(&f, 2) - 4f64.ln()).abs() < 1e-14);

        let f = series(3, &[(&[0, 0, 0], 2.5)]);
        assert_eq!(m_j(&f, 1), f64::NEG_INFINITY);
        assert_eq!(m_j(&f, 4), f64::NEG_INFINITY);
        assert!((m_j(&f, 0) - 2.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn build_profile_examples() {
        let p = build_profile(&series(1, &[(&[1], 1.0)]), 3);
        assert_eq!(p.ln_m(), &[0.0, 0.0, 0.0, 0.0]);

        let p = build_profile(&series(1, &[(&[2], 1.0)]), 2);
        let l2 = 2f64.ln();
        for (got, want) in p.ln_m().iter().zip([0.0, l2, 2.0 * l2]) {
            assert!((got - want).abs() < 1e-15);
        }

        let p = build_profile(&FourierSeries::zero(2), 4);
        assert!(p.is_zero());
        assert_eq!(p.j_max(), 4);
    }

    #[test]
    fn coefficient_audit_examples() {
        let f = series(1, &[(&[1], 1.0)]);
        let p = build_profile(&f, 4);
        assert!(coefficient_bound_audit(&f, &p, 2).unwrap().passed());

        let f = series(1, &[(&[3], 1.0)]);
        let p = build_profile(&f, 2);
        let audit = coefficient_bound_audit(&f, &p, 2).unwrap();
        assert!(audit.passed());
        assert_eq!(audit.checked, 1);

        let f = series(2, &[(&[2, 2], 1.0)]);
        let p = build_profile(&f, 4);
        assert!((p.ln_m()[4] - 16f64.ln()).abs() < 1e-14);
        assert!(coefficient_bound_audit(&f, &p, 4).unwrap().passed());
    }

    #[test]
    fn coefficient_audit_requires_order() {
        let f = series(2, &[(&[1, 1], 1.0)]);
        let p = build_profile(&f, 5);
        assert!(coefficient_bound_audit(&f, &p, 3).is_err());
        assert!(coefficient_bound_audit(&f, &p, 6).is_err());
    }

    #[test]
    fn coefficient_audit_detects_foreign_profile() {
        let f = series(1, &[(&[4], 1.0)]);
        let weak = DerivativeNormProfile::new(1, vec![0.0; 5]).unwrap();
        let audit = coefficient_bound_audit(&f, &weak, 4).unwrap();
        assert_eq!(audit.violations.len(), 1);
        assert!(audit.violations[0].slack < 0.0);
    }

    #[test]
    fn even_split() {
        assert_eq!(
            even_split_alpha(&MultiIndex::from([3, 0, -2]), 7),
            MultiIndex::from([4, 0, 3])
        );
        assert_eq!(
            even_split_alpha(&MultiIndex::from([1, 1]), 4),
            MultiIndex::from([2, 2])
        );
    }

    #[test]
    fn class_normalization() {
        // M₃ = 4 → c = (1/8)(1 − 10⁻⁶)
        let p = DerivativeNormProfile::new(1, vec![0.0, 1.0, 1.0, 4f64.ln(), 2.0]).unwrap();
        let (q, ln_c) = p.normalized_to_class().unwrap();
        assert!((ln_c - ((1.0 - 1e-6) / 8.0f64).ln()).abs() < 1e-14);
        assert!(q.ln_m()[3] < 0.5f64.ln());

        let p = DerivativeNormProfile::new(1, vec![0.0, 0.0, 0.0, 0.1f64.ln()]).unwrap();
        assert_eq!(p.normalized_to_class().unwrap().1, 0.0);
    }

    #[test]
    fn class_constant_fit() {
        let p = DerivativeNormProfile::new(1, vec![0.0, 2f64.ln(), 4f64.ln() + 1.0]).unwrap();
        let r = p.fit_class_constant(&[0.0, 0.0, 0.0]).unwrap();
        assert!((r - (0.5 * (4f64.ln() + 1.0)).exp()).abs() < 1e-12);
        assert!(p.fit_class_constant(&[-1.0, 0.0, 0.0]).is_none());
    }

    #[test]
    fn csv_export() {
        let p = DerivativeNormProfile::new(1, vec![0.5, f64::NEG_INFINITY]).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "j,lnM_j\n0,0.5\n1,-inf\n");
    }

    #[test]
    fn profile_rejects_nan() {
        assert!(DerivativeNormProfile::new(1, vec![f64::NAN]).is_err());
        assert!(DerivativeNormProfile::new(1, vec![f64::INFINITY]).is_err());
    }
}
