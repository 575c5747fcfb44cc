//! Numerical check of the H-transform integrability lemma.
//!
//! With `h̃(s) = h(e^s)` and `H̃(x) = min{h̃(s)e^{−s} : 0 ≤ s ≤ x}`, a bound
//! `H̃(x) ≤ C e^{−αx}` with `0 < α < 1` forces `∫₁^∞ h(t)/t² dt < ∞`. The
//! check fits `α` and `C` by log-linear regression of `H̃`, integrates
//! `h(t)/t² dt = h̃(s)e^{−s} ds` by the trapezoid rule in `s`, and verifies the
//! implication on the sampled range.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{cumulative_trapezoid, linear_fit, log_grid, LinearFit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralVerdict {
    Convergent,
    Divergent,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LemmaThresholds {
    /// Largest rms residual of the `ln H̃` regression for a successful fit.
    pub residual: f64,
    /// Smallest total decay `α·x_max` for a successful fit. Below it the
    /// fitted `α` is indistinguishable from rounding noise.
    pub min_decay: f64,
    /// Last-decade increment below which the integral is read as convergent.
    pub tail: f64,
    /// The integral is read as divergent when the last-decade increment is at
    /// least this fraction of the one before it.
    pub divergence_ratio: f64,
}

impl Default for LemmaThresholds {
    fn default() -> Self {
        LemmaThresholds {
            residual: 0.1,
            min_decay: 1.0,
            tail: 1e-3,
            divergence_ratio: 0.9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    /// `s = ln t` sample points, starting at 0.
    pub s_grid: Vec<f64>,
    /// `ln H̃(x)` at each grid point.
    pub ln_h_transform: Vec<f64>,
    /// Regression of `ln H̃(x) = ln C − αx`.
    pub fit: Option<LinearFit>,
    pub alpha_fit: Option<f64>,
    /// Smallest `C` with `H̃(x) ≤ C e^{−αx}` on the grid for the fitted `α`.
    pub c_fit: Option<f64>,
    pub residual: Option<f64>,
    /// `α ∈ (0, 1)`, residual and decay thresholds all met.
    pub fit_succeeded: bool,
    /// `∫₁^R h(t)/t² dt` at each grid point.
    pub integral_tail: Vec<f64>,
    pub last_decade_increment: f64,
    pub previous_decade_increment: f64,
    pub verdict: IntegralVerdict,
    /// A successful fit came with a convergent integral, or the fit failed.
    pub implication_holds: bool,
    /// `h̃` non-decreasing on the grid.
    pub increasing: bool,
    /// `h̃` discretely convex on the grid.
    pub convex: bool,
}

/// Runs the check on samples `h` taken at increasing `t_grid` with
/// `t_grid[0] = 1`. The last decade of the grid decides the integral verdict,
/// so the grid must span more than two decades.
pub fn lemma_check(t_grid: &[f64], h: &[f64], thresholds: &LemmaThresholds) -> Result<LemmaReport> {
    if t_grid.len() != h.len() {
        return Err(Error::invalid("t grid and h samples differ in length"));
    }
    if t_grid.len() < 3 || t_grid[0] != 1.0 || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "t grid must start at 1 and be strictly increasing with at least 3 points",
        ));
    }
    if let Some(i) = h.iter().position(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::invalid(format!(
            "h must be positive, got h({}) = {}",
            t_grid[i], h[i]
        )));
    }
    let s: Vec<f64> = t_grid.iter().map(|t| t.ln()).collect();
    let x_max = *s.last().unwrap();
    let decade = std::f64::consts::LN_10;
    if x_max <= 2.0 * decade {
        return Err(Error::invalid("t grid must span more than two decades"));
    }

    // h̃(s)e^{−s} = h(t)/t
    let weighted: Vec<f64> = h.iter().zip(t_grid).map(|(v, t)| v / t).collect();
    let mut ln_h_transform = Vec::with_capacity(s.len());
    let mut running = f64::INFINITY;
    for w in &weighted {
        running = running.min(w.ln());
        ln_h_transform.push(running);
    }

    let fit = linear_fit(&s, &ln_h_transform);
    let alpha_fit = fit.map(|f| -f.slope);
    let c_fit = alpha_fit.map(|a| {
        s.iter()
            .zip(&ln_h_transform)
            .map(|(x, v)| v + a * x)
            .fold(f64::NEG_INFINITY, f64::max)
            .exp()
    });
    let residual = fit.map(|f| f.rms);
    let fit_succeeded = match (alpha_fit, residual) {
        (Some(a), Some(res)) => {
            a > 0.0 && a < 1.0 && res < thresholds.residual && a * x_max >= thresholds.min_decay
        }
        _ => false,
    };

    let integral_tail = cumulative_trapezoid(&s, &weighted);
    let at = |x: f64| -> f64 {
        let i = s.partition_point(|&v| v <= x).saturating_sub(1);
        integral_tail[i]
    };
    let total = *integral_tail.last().unwrap();
    let last_decade_increment = total - at(x_max - decade);
    let previous_decade_increment = at(x_max - decade) - at(x_max - 2.0 * decade);
    let verdict = if last_decade_increment < thresholds.tail {
        IntegralVerdict::Convergent
    } else if last_decade_increment >= thresholds.divergence_ratio * previous_decade_increment {
        IntegralVerdict::Divergent
    } else {
        IntegralVerdict::Inconclusive
    };
    let implication_holds = !fit_succeeded || verdict == IntegralVerdict::Convergent;

    let scale = |a: f64, b: f64| 1e-12 * a.abs().max(b.abs()).max(1.0);
    let increasing = h.windows(2).all(|w| w[1] >= w[0] - scale(w[0], w[1]));
    let convex = (1..s.len() - 1).all(|i| {
        let left = (h[i] - h[i - 1]) / (s[i] - s[i - 1]);
        let right = (h[i + 1] - h[i]) / (s[i + 1] - s[i]);
        right >= left - scale(left, right)
    });

    Ok(LemmaReport {
        s_grid: s,
        ln_h_transform,
        fit,
        alpha_fit,
        c_fit,
        residual,
        fit_succeeded,
        integral_tail,
        last_decade_increment,
        previous_decade_increment,
        verdict,
        implication_holds,
        increasing,
        convex,
    })
}

/// Samples `h` on a log-spaced `t` grid over `[1, e^{x_max}]` and runs
/// [`lemma_check`].
pub fn lemma_check_fn<F: Fn(f64) -> f64>(
    h: F,
    x_max: f64,
    per_decade: usize,
    thresholds: &LemmaThresholds,
) -> Result<LemmaReport> {
    if !(x_max > 0.0) || !x_max.is_finite() || x_max > 700.0 {
        return Err(Error::invalid(format!(
            "x_max must lie in (0, 700], got {x_max}"
        )));
    }
    let t_grid = log_grid(1.0, x_max.exp(), per_decade);
    let samples: Vec<f64> = t_grid.iter().map(|&t| h(t)).collect();
    lemma_check(&t_grid, &samples, thresholds)
}
