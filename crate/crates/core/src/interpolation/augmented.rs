//! The interpolant augmented by one extra node `z⁰` on the torus.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::fold::{alias_fold, diagonal_fold};
use crate::error::{Error, Result};
use crate::fourier::{check_dim, FourierSeries, PolyPoint};
use crate::multi_index::MultiIndex;

/// `|Σ (z⁰_p)^m − n|` below this times `n` marks `z⁰` as degenerate.
pub const DEGENERATE_Z0_TOLERANCE: f64 = 1e-12;

/// Which fold produces the base polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Diagonal exponents `βr`; exact on the grid only when every mode is covered.
    Diagonal,
    /// Residues modulo `m`; exact on the grid for every series.
    Alias,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Diagonal => "diagonal",
            Engine::Alias => "alias",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diagonal" => Ok(Engine::Diagonal),
            "alias" => Ok(Engine::Alias),
            other => Err(Error::invalid(format!(
                "unknown engine {other:?}, expected diagonal or alias"
            ))),
        }
    }
}

/// `L_m(f; z⁰; z) = L_m(f; z) + (Σ z_p^m − n) · correction`, with
/// `correction = (f(z⁰) − L_m(f; z⁰)) / (Σ (z⁰_p)^m − n)`.
#[derive(Clone, Debug)]
pub struct AugmentedInterpolant {
    pub m: u64,
    pub engine: Engine,
    pub base: FourierSeries,
    pub z0: PolyPoint,
    pub f_z0: Complex64,
    pub correction: Complex64,
    /// The denominator vanished; the correction is dropped and the object
    /// equals the base polynomial.
    pub degenerate_z0: bool,
    /// Modes the diagonal fold could not reach (always empty for the alias engine).
    pub uncovered_modes: Vec<MultiIndex>,
}

impl AugmentedInterpolant {
    pub fn new(series: &FourierSeries, m: u64, z0: PolyPoint, engine: Engine) -> Result<Self> {
        check_dim(series.dim(), z0.dim())?;
        z0.to_torus_point()?;
        let (base, uncovered_modes) = match engine {
            Engine::Alias => (alias_fold(series, m)?, Vec::new()),
            Engine::Diagonal => {
                let fold = diagonal_fold(series, m)?;
                (fold.to_poly().base, fold.uncovered_modes)
            }
        };
        let f_z0 = series.eval_laurent(&z0)?;
        let denom = z0.power_sum_minus_dim(m);
        let degenerate_z0 = denom.norm() < DEGENERATE_Z0_TOLERANCE * series.dim() as f64;
        let correction = if degenerate_z0 {
            Complex64::new(0.0, 0.0)
        } else {
            (f_z0 - base.eval_laurent(&z0)?) / denom
        };
        Ok(AugmentedInterpolant {
            m,
            engine,
            base,
            z0,
            f_z0,
            correction,
            degenerate_z0,
            uncovered_modes,
        })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `L_m(f; z)`.
    pub fn eval_base(&self, p: &PolyPoint) -> Result<Complex64> {
        self.base.eval_laurent(p)
    }

    /// `(Σ z_p^m − n) · correction`.
    pub fn eval_correction(&self, p: &PolyPoint) -> Result<Complex64> {
        check_dim(self.dim(), p.dim())?;
        Ok(p.power_sum_minus_dim(self.m) * self.correction)
    }

    pub fn eval(&self, p: &PolyPoint) -> Result<Complex64> {
        Ok(self.eval_base(p)? + self.eval_correction(p)?)
    }
}

/// Builds [`AugmentedInterpolant`].
pub fn augmented_interpolant(
    series: &FourierSeries,
    m: u64,
    z0: PolyPoint,
    engine: Engine,
) -> Result<AugmentedInterpolant> {
    AugmentedInterpolant::new(series, m, z0, engine)
}
