//! The pluripolarity witness `d_m = m^{1/(n+1)} ln t_m` and its trend
//! classification.

use std::io::Write;

use serde::Serialize;

use super::r3_and_shifted_sweep;
use crate::error::{Error, Result};
use crate::norms::DerivativeNormProfile;
use crate::numeric::{fmt_f64, linear_fit, LinearFit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendClass {
    DivergentTrend,
    BoundedTrend,
    Inconclusive,
}

/// Cutoffs for the least-squares trend of `d_m` against `ln m`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrendThresholds {
    /// Slope above which the trend is divergent; `|slope|` at most this is bounded.
    pub slope: f64,
    /// Fewest grid points the fit may use.
    pub min_points: usize,
}

impl Default for TrendThresholds {
    fn default() -> Self {
        TrendThresholds {
            slope: 0.05,
            min_points: 3,
        }
    }
}

/// `ln t_m`, `ln θ_f(m)` and `d_m` over a grid of `m`.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessSeries {
    pub dim: usize,
    pub m_grid: Vec<u64>,
    pub ln_t: Vec<f64>,
    pub ln_theta: Vec<f64>,
    pub witness: Vec<f64>,
    /// `ln θ_f(m) > 0` per grid point.
    pub positive: Vec<bool>,
    /// First `r` at which the truncated infimum is attained at `J_max`;
    /// grid points with `m` at or beyond it are excluded from the trend fit.
    pub saturated_from: Option<u64>,
    pub classification: TrendClass,
    pub fit: Option<LinearFit>,
}

impl WitnessSeries {
    /// Builds the series from precomputed `ln t_m` (and `ln θ_f(m)`) values.
    pub fn from_log_t(
        dim: usize,
        m_grid: Vec<u64>,
        ln_t: Vec<f64>,
        ln_theta: Vec<f64>,
        thresholds: &TrendThresholds,
    ) -> Result<Self> {
        Self::assemble(dim, m_grid, ln_t, ln_theta, None, thresholds)
    }

    fn assemble(
        dim: usize,
        m_grid: Vec<u64>,
        ln_t: Vec<f64>,
        ln_theta: Vec<f64>,
        saturated_from: Option<u64>,
        thresholds: &TrendThresholds,
    ) -> Result<Self> {
        check_grid(&m_grid)?;
        if dim == 0 {
            return Err(Error::invalid("dimension n must be positive"));
        }
        if ln_t.len() != m_grid.len() || ln_theta.len() != m_grid.len() {
            return Err(Error::invalid("witness columns differ in length"));
        }
        let exponent = 1.0 / (dim as f64 + 1.0);
        let witness: Vec<f64> = m_grid
            .iter()
            .zip(&ln_t)
            .map(|(&m, &lt)| (m as f64).powf(exponent) * lt)
            .collect();
        let positive = ln_theta.iter().map(|&v| v > 0.0).collect();
        let usable = match saturated_from {
            Some(s) => m_grid.partition_point(|&m| m < s),
            None => m_grid.len(),
        };
        let (classification, fit) =
            classify_trend(&m_grid[..usable], &witness[..usable], thresholds);
        Ok(WitnessSeries {
            dim,
            m_grid,
            ln_t,
            ln_theta,
            witness,
            positive,
            saturated_from,
            classification,
            fit,
        })
    }

    /// Whether `ln t_m ≥ ln θ_f(m)` at every grid point (exact comparison).
    pub fn chain_holds(&self) -> bool {
        self.ln_t.iter().zip(&self.ln_theta).all(|(t, th)| t >= th)
    }

    /// Writes `m,lnT,lnTheta,d_m,positivity_flag` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "m,lnT,lnTheta,d_m,positivity_flag")?;
        for i in 0..self.m_grid.len() {
            writeln!(
                w,
                "{},{},{},{},{}",
                self.m_grid[i],
                fmt_f64(self.ln_t[i]),
                fmt_f64(self.ln_theta[i]),
                fmt_f64(self.witness[i]),
                self.positive[i]
            )?;
        }
        Ok(())
    }
}

fn check_grid(m_grid: &[u64]) -> Result<()> {
    if m_grid.is_empty() {
        return Err(Error::invalid("m grid is empty"));
    }
    if m_grid[0] == 0 || m_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "m grid must be positive and strictly increasing",
        ));
    }
    Ok(())
}

/// Classifies `d_m` by the least-squares slope against `ln m` over the top
/// half of the grid.
pub fn classify_trend(
    m_grid: &[u64],
    d: &[f64],
    thresholds: &TrendThresholds,
) -> (TrendClass, Option<LinearFit>) {
    let start = m_grid.len() / 2;
    if m_grid.len() - start < thresholds.min_points.max(2) {
        return (TrendClass::Inconclusive, None);
    }
    let x: Vec<f64> = m_grid[start..].iter().map(|&m| (m as f64).ln()).collect();
    let fit = match linear_fit(&x, &d[start..]) {
        Some(f) if f.slope.is_finite() => f,
        _ => return (TrendClass::Inconclusive, None),
    };
    let class = if fit.slope > thresholds.slope {
        TrendClass::DivergentTrend
    } else if fit.slope.abs() <= thresholds.slope {
        TrendClass::BoundedTrend
    } else {
        TrendClass::Inconclusive
    };
    (class, Some(fit))
}

/// Evaluates `ln t_m`, `ln θ_f(m)` and `d_m = m^{1/(n+1)} ln t_m` on `m_grid`
/// from the profile as given, with `r` ranging over the integers `1..=m`.
pub fn witness(
    profile: &DerivativeNormProfile,
    n: usize,
    m_grid: &[u64],
    thresholds: &TrendThresholds,
) -> Result<WitnessSeries> {
    check_grid(m_grid)?;
    if n == 0 {
        return Err(Error::invalid("dimension n must be positive"));
    }
    let m_max = *m_grid.last().expect("grid checked non-empty");
    let sweep = r3_and_shifted_sweep(profile, m_max)?;
    let j_max = profile.j_max();
    let nf = n as f64;
    let (mut acc_t, mut acc_theta) = (f64::INFINITY, f64::INFINITY);
    let mut saturated_from = None;
    let mut ln_t = Vec::with_capacity(m_grid.len());
    let mut ln_theta = Vec::with_capacity(m_grid.len());
    let mut next = 0;
    for (i, (full, shifted)) in sweep.iter().enumerate() {
        let r = (i + 1) as u64;
        if full.value == f64::NEG_INFINITY || *shifted == f64::NEG_INFINITY {
            return Err(Error::DegenerateProfile(format!(
                "associated function vanishes at r = {r}"
            )));
        }
        if saturated_from.is_none() && full.argmin == j_max {
            saturated_from = Some(r);
        }
        let denom = nf * r as f64;
        acc_t = acc_t.min(-full.value / denom);
        acc_theta = acc_theta.min(-shifted / denom);
        if m_grid[next] == r {
            ln_t.push(acc_t);
            ln_theta.push(acc_theta);
            next += 1;
        }
    }
    WitnessSeries::assemble(
        n,
        m_grid.to_vec(),
        ln_t,
        ln_theta,
        saturated_from,
        thresholds,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associated::{t_m, theta};
    use crate::numeric::ln_factorials;

    #[test]
    fn constant_log_t_diverges() {
        let grid: Vec<u64> = (1..=400).collect();
        let ones = vec![1.0; grid.len()];
        let w = WitnessSeries::from_log_t(1, grid.clone(), ones.clone(), ones, &Default::default())
            .unwrap();
        assert_eq!(w.classification, TrendClass::DivergentTrend);
        for (m, d) in grid.iter().zip(&w.witness) {
            assert!((d - (*m as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn compensated_log_t_is_bounded() {
        let grid: Vec<u64> = (1..=400).collect();
        let lt: Vec<f64> = grid.iter().map(|&m| (m as f64).powf(-0.5)).collect();
        let w = WitnessSeries::from_log_t(1, grid, lt.clone(), lt, &Default::default()).unwrap();
        assert_eq!(w.classification, TrendClass::BoundedTrend);
        assert!(w.witness.iter().all(|d| (d - 1.0).abs() < 1e-12));
    }

    #[test]
    fn sweep_matches_direct_evaluation() {
        let p = DerivativeNormProfile::new(2, ln_factorials(40).iter().map(|v| v - 5.0).collect())
            .unwrap();
        let grid = [1, 2, 5, 17, 30];
        let w = witness(&p, 2, &grid, &Default::default()).unwrap();
        for (i, &m) in grid.iter().enumerate() {
            assert!((w.ln_t[i] - t_m(&p, m, 2).unwrap()).abs() < 1e-12);
            assert!((w.ln_theta[i] - theta(&p, m, 2).unwrap()).abs() < 1e-12);
        }
        assert!(w.chain_holds());
        assert!(w.ln_t.windows(2).all(|v| v[1] <= v[0]));
    }

    #[test]
    fn saturation_is_recorded() {
        let p = DerivativeNormProfile::new(1, vec![-3.0; 21]).unwrap();
        let grid: Vec<u64> = (1..=50).collect();
        let w = witness(&p, 1, &grid, &Default::default()).unwrap();
        assert_eq!(w.saturated_from, Some(2));
        assert_eq!(w.classification, TrendClass::Inconclusive);
    }

    #[test]
    fn rejects_bad_grid() {
        let p = DerivativeNormProfile::new(1, vec![0.0; 5]).unwrap();
        assert!(witness(&p, 1, &[3, 2], &Default::default()).is_err());
        assert!(witness(&p, 1, &[0, 2], &Default::default()).is_err());
        assert!(witness(&p, 1, &[], &Default::default()).is_err());
    }

    #[test]
    fn zero_profile_is_degenerate() {
        let p = DerivativeNormProfile::new(1, vec![f64::NEG_INFINITY; 6]).unwrap();
        assert!(matches!(
            witness(&p, 1, &[1, 2], &Default::default()),
            Err(Error::DegenerateProfile(_))
        ));
    }
}
