//! Trend diagnostic for Carleman's criterion
//! `∫₁^∞ ln τ_f(r) / r² dr = −∞`.
//!
//! Partial integrals `I(R) = ∫₁^R −ln τ_f(r)/r² dr` are accumulated by the
//! trapezoid rule in `s = ln r` on a log-spaced grid. The verdict comes from
//! the growth exponent `γ` of `−ln τ_f(r) ~ r^γ`: `γ ≥ 1` makes `I(R)` grow
//! without bound, `γ < 1` makes it converge. Only the unsaturated part of the
//! grid (minimizer below `J_max`) is trusted; past it the truncation caps
//! `−ln τ_f(r)` at `J_max ln r + const`.

use serde::Serialize;

use super::log_tau_detail;
use crate::error::{Error, Result};
use crate::norms::DerivativeNormProfile;
use crate::numeric::{cumulative_trapezoid, linear_fit, log_grid, LinearFit};

/// Grid density for the integrals.
pub const POINTS_PER_DECADE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarlemanVerdict {
    QuasianalyticTrend,
    NonQuasianalyticTrend,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CarlemanThresholds {
    /// Growth exponent at or above which the integral is read as divergent.
    pub quasianalytic_exponent: f64,
    /// Growth exponent at or below which the integral is read as convergent.
    pub non_quasianalytic_exponent: f64,
    /// Smallest unsaturated range `[1, r_eff]` that supports a verdict.
    pub min_effective_r: f64,
    /// Fewest grid points in the fit window.
    pub min_points: usize,
}

impl Default for CarlemanThresholds {
    fn default() -> Self {
        CarlemanThresholds {
            quasianalytic_exponent: 0.9,
            non_quasianalytic_exponent: 0.75,
            min_effective_r: 10.0,
            min_points: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CarlemanReport {
    pub r_max: f64,
    pub j_max: usize,
    pub r_grid: Vec<f64>,
    pub neg_ln_tau: Vec<f64>,
    pub argmin: Vec<usize>,
    /// `I(R)` at each grid point.
    pub partial_integrals: Vec<f64>,
    /// Largest grid `r` before the minimizer first reaches `J_max`.
    pub r_effective: f64,
    pub saturated: bool,
    /// `ln(−ln τ)` against `ln r` over the fit window; the slope is `γ`.
    pub exponent_fit: Option<LinearFit>,
    /// `−ln τ` against `r` over the fit window.
    pub linear_fit: Option<LinearFit>,
    /// `−ln τ` against `√r` over the fit window.
    pub sqrt_fit: Option<LinearFit>,
    pub verdict: CarlemanVerdict,
}

/// Tabulates `−ln τ_f` and `I(R)` up to `r_max` and classifies the trend.
///
/// Verdicts hold only for the truncated profile: `J_max` must be well above
/// the minimizing `j` at the largest `r` that matters, otherwise the report
/// is flagged `saturated` and the usable range shrinks.
pub fn carleman_diagnostic(
    profile: &DerivativeNormProfile,
    r_max: f64,
    thresholds: &CarlemanThresholds,
) -> Result<CarlemanReport> {
    if !(r_max >= 2.0) || !r_max.is_finite() {
        return Err(Error::invalid(format!("r_max must be ≥ 2, got {r_max}")));
    }
    let j_max = profile.j_max();
    let r_grid = log_grid(1.0, r_max, POINTS_PER_DECADE);
    let mut neg_ln_tau = Vec::with_capacity(r_grid.len());
    let mut argmin = Vec::with_capacity(r_grid.len());
    for &r in &r_grid {
        let m = log_tau_detail(profile, r)?;
        if m.value == f64::NEG_INFINITY {
            return Err(Error::DegenerateProfile(format!(
                "ln τ_f = −∞ at r = {r}: derivatives of order {} vanish",
                m.argmin
            )));
        }
        neg_ln_tau.push(-m.value);
        argmin.push(m.argmin);
    }

    // ∫ −ln τ(r)/r² dr = ∫ −ln τ(e^s) e^{−s} ds
    let s: Vec<f64> = r_grid.iter().map(|r| r.ln()).collect();
    let integrand: Vec<f64> = neg_ln_tau.iter().zip(&r_grid).map(|(v, r)| v / r).collect();
    let partial_integrals = cumulative_trapezoid(&s, &integrand);

    let first_saturated = argmin.iter().position(|&j| j == j_max);
    let saturated = first_saturated.is_some();
    let r_effective = match first_saturated {
        None => r_max,
        Some(0) => r_grid[0],
        Some(i) => r_grid[i - 1],
    };

    let lo = r_effective.sqrt();
    let window: Vec<usize> = (0..r_grid.len())
        .filter(|&i| r_grid[i] >= lo && r_grid[i] <= r_effective && neg_ln_tau[i] > 0.0)
        .collect();
    let pick = |f: &dyn Fn(usize) -> (f64, f64)| -> Option<LinearFit> {
        let (x, y): (Vec<f64>, Vec<f64>) = window.iter().map(|&i| f(i)).unzip();
        linear_fit(&x, &y)
    };
    let enough = r_effective >= thresholds.min_effective_r && window.len() >= thresholds.min_points;
    let (exponent_fit, linear, sqrt_fit) = if enough {
        (
            pick(&|i| (s[i], neg_ln_tau[i].ln())),
            pick(&|i| (r_grid[i], neg_ln_tau[i])),
            pick(&|i| (r_grid[i].sqrt(), neg_ln_tau[i])),
        )
    } else {
        (None, None, None)
    };

    let verdict = match exponent_fit {
        Some(f) if f.slope >= thresholds.quasianalytic_exponent => {
            CarlemanVerdict::QuasianalyticTrend
        }
        Some(f) if f.slope <= thresholds.non_quasianalytic_exponent => {
            CarlemanVerdict::NonQuasianalyticTrend
        }
        _ => CarlemanVerdict::Inconclusive,
    };

    Ok(CarlemanReport {
        r_max,
        j_max,
        r_grid,
        neg_ln_tau,
        argmin,
        partial_integrals,
        r_effective,
        saturated,
        exponent_fit,
        linear_fit: linear,
        sqrt_fit,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ln_factorials;

    fn profile(v: Vec<f64>) -> DerivativeNormProfile {
        DerivativeNormProfile::new(1, v).unwrap()
    }

    #[test]
    fn factorial_is_quasianalytic() {
        let p = profile(ln_factorials(200));
        let rep = carleman_diagnostic(&p, 100.0, &Default::default()).unwrap();
        assert_eq!(rep.verdict, CarlemanVerdict::QuasianalyticTrend);
        assert!(!rep.saturated);
        // −ln τ(r) = r − O(ln r): the last decade adds roughly ln 10
        let n = rep.partial_integrals.len();
        let inc = rep.partial_integrals[n - 1] - rep.partial_integrals[n - 1 - POINTS_PER_DECADE];
        assert!(inc > 1.5 && inc < 2.5, "{inc}");
    }

    #[test]
    fn gevrey_two_is_not_quasianalytic() {
        let p = profile(ln_factorials(200).iter().map(|v| 2.0 * v).collect());
        let rep = carleman_diagnostic(&p, 1e4, &Default::default()).unwrap();
        assert_eq!(rep.verdict, CarlemanVerdict::NonQuasianalyticTrend);
        let gamma = rep.exponent_fit.unwrap().slope;
        assert!((gamma - 0.5).abs() < 0.1, "{gamma}");
        // the √r model fits better than the linear one
        assert!(rep.sqrt_fit.unwrap().rms < rep.linear_fit.unwrap().rms);
    }

    #[test]
    fn constant_profile_saturates() {
        let p = profile(vec![0.0; 51]);
        let rep = carleman_diagnostic(&p, 100.0, &Default::default()).unwrap();
        assert!(rep.saturated);
        assert_eq!(rep.verdict, CarlemanVerdict::Inconclusive);
        // −ln τ(r) = J_max ln r past r = 1
        let i = rep.r_grid.len() - 1;
        assert!((rep.neg_ln_tau[i] - 50.0 * 100f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn partial_integrals_non_decreasing_for_positive_integrand() {
        let p = profile(ln_factorials(100).iter().map(|v| v - 2.0).collect());
        let rep = carleman_diagnostic(&p, 50.0, &Default::default()).unwrap();
        assert!(rep.partial_integrals.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn rejects_small_r_max() {
        let p = profile(vec![0.0; 5]);
        assert!(carleman_diagnostic(&p, 1.5, &Default::default()).is_err());
    }
}
