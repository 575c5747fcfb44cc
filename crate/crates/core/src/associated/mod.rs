//! Associated functions of a derivative-norm profile, all in log-domain.
//!
//! * `ln τ_f(r)   = min_{0≤j≤J} (ln M_j − j ln r)`
//! * `ln τ̃_f(r)   = min_{0≤s≤J−3} (ln M_{s+3} − s ln r)`
//! * `ln t_m      = min_{1≤r≤m} −ln(r³ τ_f(r)) / (n r)`
//! * `ln θ_f(m)   = min_{1≤r≤m} −ln τ̃_f(r) / (n r)`
//!
//! The infimum over all `j ≥ 0` is truncated at the profile's `J_max`; the
//! minimizing index is reported so callers can detect saturation (minimizer
//! equal to `J_max`), which marks values that the truncation has distorted.
//!
//! `ln(r³τ_f(r))` is evaluated directly as `min_j (ln M_j − (j−3) ln r)`, the
//! very expressions that define `ln τ̃_f` for `j ≥ 3`. Hence
//! `ln(r³τ_f) ≤ ln τ̃_f` holds bit-for-bit, and so does `ln t_m ≥ ln θ_f(m)`.

mod carleman;
mod lemma;
mod witness;

use std::io::Write;

use serde::Serialize;

pub use carleman::{carleman_diagnostic, CarlemanReport, CarlemanThresholds, CarlemanVerdict};
pub use lemma::{lemma_check, lemma_check_fn, IntegralVerdict, LemmaReport, LemmaThresholds};
pub use witness::{classify_trend, witness, TrendClass, TrendThresholds, WitnessSeries};

use crate::error::{Error, Result};
use crate::norms::DerivativeNormProfile;
use crate::numeric::fmt_f64;

/// Absolute tolerance for the identity `r³τ_f(r) = τ̃_f(r)` in log-domain.
pub const R3_IDENTITY_TOLERANCE: f64 = 1e-9;

/// A truncated infimum together with its smallest minimizing index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Minimizer {
    pub value: f64,
    pub argmin: usize,
}

fn check_r(r: f64) -> Result<f64> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::invalid(format!("r must be ≥ 1, got {r}")));
    }
    Ok(r.ln())
}

fn check_shiftable(profile: &DerivativeNormProfile) -> Result<()> {
    if profile.j_max() < 3 {
        return Err(Error::invalid(format!(
            "shifted associated function needs J_max ≥ 3, got {}",
            profile.j_max()
        )));
    }
    Ok(())
}

/// `min_j (ln M_j − (j − offset)·x)` over `j ≥ from`, smallest index on ties.
fn min_affine(ln_m: &[f64], from: usize, offset: f64, x: f64) -> Minimizer {
    let mut best = Minimizer {
        value: f64::INFINITY,
        argmin: from,
    };
    for (j, &a) in ln_m.iter().enumerate().skip(from) {
        let v = a - (j as f64 - offset) * x;
        if v < best.value {
            best = Minimizer {
                value: v,
                argmin: j,
            };
        }
    }
    best
}

/// `ln τ_f(r)` with its minimizing `j`.
pub fn log_tau_detail(profile: &DerivativeNormProfile, r: f64) -> Result<Minimizer> {
    let x = check_r(r)?;
    Ok(min_affine(profile.ln_m(), 0, 0.0, x))
}

/// `ln τ_f(r) = min_{0≤j≤J_max} (ln M_j − j ln r)`, an upper bound for the
/// untruncated infimum.
pub fn log_tau(profile: &DerivativeNormProfile, r: f64) -> Result<f64> {
    log_tau_detail(profile, r).map(|m| m.value)
}

/// `ln τ̃_f(r)` with its minimizing `j = s + 3`.
pub fn log_tau_shifted_detail(profile: &DerivativeNormProfile, r: f64) -> Result<Minimizer> {
    let x = check_r(r)?;
    check_shiftable(profile)?;
    Ok(min_affine(profile.ln_m(), 3, 3.0, x))
}

/// `ln τ̃_f(r) = min_{0≤s≤J_max−3} (ln M_{s+3} − s ln r)`.
pub fn log_tau_shifted(profile: &DerivativeNormProfile, r: f64) -> Result<f64> {
    log_tau_shifted_detail(profile, r).map(|m| m.value)
}

/// `ln(r³ τ_f(r))` with its minimizing `j`.
pub fn log_r3_tau_detail(profile: &DerivativeNormProfile, r: f64) -> Result<Minimizer> {
    let x = check_r(r)?;
    Ok(min_affine(profile.ln_m(), 0, 3.0, x))
}

/// `ln t_m` from `ln(r³τ_f(r))` sampled at `r = 1, 2, …`; entry `i` of the
/// result is `ln t_{i+1}`.
pub fn log_t_sequence(ln_r3_tau: &[f64], n: usize) -> Result<Vec<f64>> {
    running_min_ratio(ln_r3_tau, n)
}

/// `ln θ_f(m)` from `ln τ̃_f(r)` sampled at `r = 1, 2, …`.
pub fn log_theta_sequence(ln_tau_shifted: &[f64], n: usize) -> Result<Vec<f64>> {
    running_min_ratio(ln_tau_shifted, n)
}

fn running_min_ratio(values: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("dimension n must be positive"));
    }
    let mut acc = f64::INFINITY;
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let r = i + 1;
            if v == f64::NEG_INFINITY {
                return Err(Error::DegenerateProfile(format!(
                    "associated function vanishes at r = {r}"
                )));
            }
            acc = acc.min(-v / (n as f64 * r as f64));
            Ok(acc)
        })
        .collect()
}

/// `ln t_m = min_{1≤r≤m} −ln(r³τ_f(r))/(n r)` over integer `r`.
pub fn t_m(profile: &DerivativeNormProfile, m: u64, n: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("m must be ≥ 1"));
    }
    let vals = (1..=m)
        .map(|r| log_r3_tau_detail(profile, r as f64).map(|v| v.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(*log_t_sequence(&vals, n)?.last().expect("m ≥ 1"))
}

/// `ln θ_f(m) = min_{1≤r≤m} −ln τ̃_f(r)/(n r)` over integer `r`.
pub fn theta(profile: &DerivativeNormProfile, m: u64, n: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("m must be ≥ 1"));
    }
    let vals = (1..=m)
        .map(|r| log_tau_shifted(profile, r as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(*log_theta_sequence(&vals, n)?.last().expect("m ≥ 1"))
}

/// `ln τ_f` and `ln τ̃_f` tabulated over an increasing grid of `r ≥ 1`.
#[derive(Clone, Debug, Serialize)]
pub struct AssociatedTable {
    pub r_grid: Vec<f64>,
    pub ln_tau: Vec<f64>,
    pub ln_tau_shifted: Vec<f64>,
    /// Smallest minimizing `j` of `ln τ_f` at each grid point.
    pub argmin: Vec<usize>,
    pub j_max: usize,
    pub r0_estimate: f64,
}

impl AssociatedTable {
    pub fn build(profile: &DerivativeNormProfile, r_grid: Vec<f64>) -> Result<Self> {
        check_shiftable(profile)?;
        if r_grid.is_empty() {
            return Err(Error::invalid("r grid is empty"));
        }
        if r_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("r grid must be strictly increasing"));
        }
        let mut ln_tau = Vec::with_capacity(r_grid.len());
        let mut ln_tau_shifted = Vec::with_capacity(r_grid.len());
        let mut argmin = Vec::with_capacity(r_grid.len());
        for &r in &r_grid {
            let t = log_tau_detail(profile, r)?;
            ln_tau.push(t.value);
            argmin.push(t.argmin);
            ln_tau_shifted.push(log_tau_shifted(profile, r)?);
        }
        let mut table = AssociatedTable {
            r_grid,
            ln_tau,
            ln_tau_shifted,
            argmin,
            j_max: profile.j_max(),
            r0_estimate: f64::INFINITY,
        };
        table.r0_estimate = find_r0(&table);
        Ok(table)
    }

    /// Whether the truncated infimum at grid point `i` is attained at `J_max`.
    pub fn saturated(&self, i: usize) -> bool {
        self.argmin[i] == self.j_max
    }

    /// Whether `r³τ_f(r) = τ̃_f(r)` holds at grid point `i` within
    /// [`R3_IDENTITY_TOLERANCE`].
    pub fn r3_identity_holds(&self, i: usize) -> bool {
        let lhs = 3.0 * self.r_grid[i].ln() + self.ln_tau[i];
        let rhs = self.ln_tau_shifted[i];
        if lhs == f64::NEG_INFINITY && rhs == f64::NEG_INFINITY {
            return true;
        }
        (lhs - rhs).abs() <= R3_IDENTITY_TOLERANCE
    }

    /// `ln τ_f` never increases along the grid (exact comparison).
    pub fn is_non_increasing(&self) -> bool {
        self.ln_tau.windows(2).all(|w| w[1] <= w[0])
    }

    /// Concavity of `ln τ_f` in `ln r`, certified exactly by the minimizing
    /// index: the supergradient at each grid point is `−argmin`, and a
    /// function of this form is concave iff its supergradients do not
    /// increase, i.e. the minimizer never decreases along the grid.
    pub fn is_concave_in_log_r(&self) -> bool {
        self.argmin.windows(2).all(|w| w[0] <= w[1])
    }

    /// Writes `r,lnTau,lnTauShifted` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "r,lnTau,lnTauShifted")?;
        for i in 0..self.r_grid.len() {
            writeln!(
                w,
                "{},{},{}",
                fmt_f64(self.r_grid[i]),
                fmt_f64(self.ln_tau[i]),
                fmt_f64(self.ln_tau_shifted[i])
            )?;
        }
        Ok(())
    }
}

/// Smallest grid `r` from which on `r³τ_f(r) = τ̃_f(r)` holds at every grid
/// point; `+∞` if the identity fails at the last grid point.
pub fn find_r0(table: &AssociatedTable) -> f64 {
    let len = table.r_grid.len();
    match (0..len).rev().find(|&i| !table.r3_identity_holds(i)) {
        None => table.r_grid[0],
        Some(i) if i + 1 < len => table.r_grid[i + 1],
        Some(_) => f64::INFINITY,
    }
}

/// Carleman diagnostic and witness of one profile after rescaling it into
/// the normalized class `M₃ < ½`.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    /// `ln c` of the class rescaling applied before both diagnostics.
    pub ln_scale: f64,
    pub carleman: CarlemanReport,
    pub witness: WitnessSeries,
}

/// Runs [`carleman_diagnostic`] up to `r_max` and [`witness`] on `m_grid`
/// for the class-normalized profile. The Carleman verdict does not depend on
/// the rescaling; the witness needs it, since `ln t_m > 0` presumes `M₃ < ½`.
pub fn verdict(
    profile: &DerivativeNormProfile,
    n: usize,
    m_grid: &[u64],
    r_max: f64,
    carleman_thresholds: &CarlemanThresholds,
    trend_thresholds: &TrendThresholds,
) -> Result<Verdict> {
    if profile.is_zero() {
        return Err(Error::DegenerateProfile("zero function".into()));
    }
    let (normalized, ln_scale) = profile.normalized_to_class()?;
    Ok(Verdict {
        ln_scale,
        carleman: carleman_diagnostic(&normalized, r_max, carleman_thresholds)?,
        witness: witness(&normalized, n, m_grid, trend_thresholds)?,
    })
}

/// Lower convex hull of `(s_j, ln M_j)` used to evaluate minima of affine
/// families quickly over many `r`.
#[derive(Clone, Debug)]
pub(crate) struct LowerHull {
    /// `(j, s_j, ln M_j)` for the hull vertices, `s` increasing.
    vertices: Vec<(usize, f64, f64)>,
    edge_slopes: Vec<f64>,
    /// First `j` with `ln M_j = −∞`, which makes every minimum `−∞`.
    neg_inf: Option<usize>,
}

impl LowerHull {
    pub(crate) fn new(ln_m: &[f64], from: usize, offset: f64) -> Self {
        let mut vertices: Vec<(usize, f64, f64)> = Vec::new();
        let mut neg_inf = None;
        for (j, &a) in ln_m.iter().enumerate().skip(from) {
            if a == f64::NEG_INFINITY {
                neg_inf.get_or_insert(j);
                continue;
            }
            let p = (j, j as f64 - offset, a);
            while vertices.len() >= 2 {
                let o = vertices[vertices.len() - 2];
                let q = vertices[vertices.len() - 1];
                let cross = (q.1 - o.1) * (p.2 - o.2) - (q.2 - o.2) * (p.1 - o.1);
                if cross <= 0.0 {
                    vertices.pop();
                } else {
                    break;
                }
            }
            vertices.push(p);
        }
        let edge_slopes = vertices
            .windows(2)
            .map(|w| (w[1].2 - w[0].2) / (w[1].1 - w[0].1))
            .collect();
        LowerHull {
            vertices,
            edge_slopes,
            neg_inf,
        }
    }

    /// `min_j (ln M_j − s_j x)` and its minimizing `j`.
    pub(crate) fn query(&self, x: f64) -> Minimizer {
        if let Some(j) = self.neg_inf {
            return Minimizer {
                value: f64::NEG_INFINITY,
                argmin: j,
            };
        }
        let v = self.edge_slopes.partition_point(|&s| s < x);
        let lo = v.saturating_sub(1);
        let hi = (v + 1).min(self.vertices.len() - 1);
        let mut best = Minimizer {
            value: f64::INFINITY,
            argmin: usize::MAX,
        };
        for &(j, s, a) in &self.vertices[lo..=hi] {
            let val = a - s * x;
            if val < best.value {
                best = Minimizer {
                    value: val,
                    argmin: j,
                };
            }
        }
        best
    }
}

/// `ln(r³τ_f)` and `ln τ̃_f` over `r = 1..=r_max` using the hull of the
/// shifted sequence plus the three leading terms; agrees with the direct
/// minimum up to rounding and keeps `ln(r³τ_f) ≤ ln τ̃_f` exact.
pub(crate) fn r3_and_shifted_sweep(
    profile: &DerivativeNormProfile,
    r_max: u64,
) -> Result<Vec<(Minimizer, f64)>> {
    check_shiftable(profile)?;
    let ln_m = profile.ln_m();
    let hull = LowerHull::new(ln_m, 3, 3.0);
    let mut out = Vec::with_capacity(r_max as usize);
    for r in 1..=r_max {
        let x = (r as f64).ln();
        let shifted = hull.query(x);
        let mut best = Minimizer {
            value: f64::INFINITY,
            argmin: 0,
        };
        for (j, &a) in ln_m.iter().enumerate().take(3) {
            let v = a - (j as f64 - 3.0) * x;
            if v < best.value {
                best = Minimizer {
                    value: v,
                    argmin: j,
                };
            }
        }
        if shifted.value < best.value {
            best = shifted;
        }
        out.push((best, shifted.value));
    }
    Ok(out)
}
