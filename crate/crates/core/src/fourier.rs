//! Sparse multi-index Fourier series on the n-torus, their Laurent
//! continuation to polyannuli, and the roots-of-unity interpolation grid.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::{BufRead, Write};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Coefficients with modulus below this are dropped on construction.
pub const PRUNE_THRESHOLD: f64 = 1e-300;

/// Default cap on the number of grid points `m^n`.
pub const DEFAULT_GRID_CAP: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_GRID_CAP`] for the command line tool.
pub const GRID_CAP_ENV: &str = "QTORUS_GRID_CAP";

/// Tolerance on `|z_p| = 1` when a point is required to lie on the torus.
pub const TORUS_TOLERANCE: f64 = 1e-9;

/// A point `θ ∈ [0, 2π)^n` of the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    theta: Vec<f64>,
}

impl TorusPoint {
    /// Builds a torus point, reducing every angle into `[0, 2π)`.
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::invalid("torus point needs at least one angle"));
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::invalid("torus angles must be finite"));
        }
        let theta = theta
            .into_iter()
            .map(|t| {
                let r = t.rem_euclid(TAU);
                // rem_euclid can round up to exactly TAU for tiny negative input
                if r >= TAU {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        Ok(TorusPoint { theta })
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.theta
    }

    /// The point `e^{iθ} ∈ C^n`.
    pub fn to_poly_point(&self) -> PolyPoint {
        PolyPoint {
            z: self.theta.iter().map(|&t| Complex64::cis(t)).collect(),
        }
    }
}

/// A point of `(C \ {0})^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyPoint {
    z: Vec<Complex64>,
}

impl PolyPoint {
    pub fn new(z: Vec<Complex64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::invalid("point needs at least one component"));
        }
        if let Some(p) = z.iter().position(|c| c.norm() == 0.0 || !c.is_finite()) {
            return Err(Error::ZeroComponent(p));
        }
        Ok(PolyPoint { z })
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    /// Angles of a point lying on the torus; fails if some `|z_p|` differs
    /// from one by more than [`TORUS_TOLERANCE`].
    pub fn to_torus_point(&self) -> Result<TorusPoint> {
        for (index, c) in self.z.iter().enumerate() {
            let modulus = c.norm();
            if (modulus - 1.0).abs() > TORUS_TOLERANCE {
                return Err(Error::OffTorus { index, modulus });
            }
        }
        TorusPoint::new(self.z.iter().map(|c| c.arg()).collect())
    }

    /// `z₁^m + … + z_n^m − n`, the factor that vanishes on the interpolation grid.
    pub fn power_sum_minus_dim(&self, m: u64) -> Complex64 {
        let sum: Complex64 = self.z.iter().map(|&c| complex_pow(c, m as i64)).sum();
        sum - Complex64::new(self.z.len() as f64, 0.0)
    }
}

/// `z^k` in polar form; exact powers of unit-modulus inputs stay on the circle.
pub(crate) fn complex_pow(z: Complex64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let (r, phi) = z.to_polar();
    let kf = k as f64;
    Complex64::from_polar((kf * r.ln()).exp(), kf * phi)
}

/// The closed polyannulus `{ z : 1/t ≤ |z_p| ≤ t }`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingAnnulus {
    dim: usize,
    t: f64,
}

impl SamplingAnnulus {
    pub fn new(dim: usize, t: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("annulus dimension must be positive"));
        }
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::invalid(format!(
                "annulus radius must be > 1, got {t}"
            )));
        }
        Ok(SamplingAnnulus { dim, t })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn contains(&self, p: &PolyPoint) -> bool {
        let lt = self.t.ln();
        p.dim() == self.dim
            && p.coords()
                .iter()
                .all(|c| c.norm().ln().abs() <= lt * (1.0 + 1e-12))
    }

    /// Draws a point with log-uniform moduli and uniform phases.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PolyPoint {
        let lt = self.t.ln();
        let z = (0..self.dim)
            .map(|_| {
                let log_r: f64 = rng.gen_range(-lt..=lt);
                let phase: f64 = rng.gen_range(0.0..TAU);
                Complex64::from_polar(log_r.exp(), phase)
            })
            .collect();
        PolyPoint { z }
    }
}

/// A finitely supported Fourier series `f(e^{iθ}) = Σ c_k e^{ik·θ}` on the
/// n-torus, stored as a sparse map from multi-index to coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl FourierSeries {
    /// The zero series in dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "series dimension must be positive");
        FourierSeries {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a series from distinct modes. Repeated indices are an error.
    pub fn from_modes<I>(dim: usize, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if dim == 0 {
            return Err(Error::invalid("series dimension must be positive"));
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in modes {
            check_dim(dim, k.dim())?;
            if !c.is_finite() {
                return Err(Error::invalid(format!("coefficient at {k} is not finite")));
            }
            match coeffs.entry(k) {
                Entry::Occupied(e) => return Err(Error::DuplicateIndex(e.key().clone())),
                Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        coeffs.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
        Ok(FourierSeries { dim, coeffs })
    }

    /// Builds a series summing the coefficients of repeated indices.
    pub fn from_accumulated<I>(dim: usize, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if dim == 0 {
            return Err(Error::invalid("series dimension must be positive"));
        }
        let mut coeffs: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (k, c) in modes {
            check_dim(dim, k.dim())?;
            *coeffs.entry(k).or_default() += c;
        }
        coeffs.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
        Ok(FourierSeries { dim, coeffs })
    }

    /// Convenience constructor for one-dimensional series from `(k, c)` pairs.
    pub fn univariate<I>(modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        Self::from_modes(
            1,
            modes.into_iter().map(|(k, c)| (MultiIndex::from([k]), c)),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Modes in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.coeffs.keys()
    }

    /// `Σ |c_k|`, an upper bound for `|f|` on the torus.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// Largest `max_p |k_p|` over the support.
    pub fn support_radius(&self) -> u64 {
        self.coeffs
            .keys()
            .map(MultiIndex::max_norm)
            .max()
            .unwrap_or(0)
    }

    /// `Σ c_k e^{i k·θ}`.
    pub fn eval_torus(&self, p: &TorusPoint) -> Result<Complex64> {
        check_dim(self.dim, p.dim())?;
        let theta = p.angles();
        Ok(self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k
                    .entries()
                    .iter()
                    .zip(theta)
                    .map(|(&kp, &t)| kp as f64 * t)
                    .sum();
                c * Complex64::cis(phase)
            })
            .sum())
    }

    /// `Σ c_k z₁^{k₁}⋯z_n^{k_n}` at a point with nonzero components.
    pub fn eval_laurent(&self, p: &PolyPoint) -> Result<Complex64> {
        check_dim(self.dim, p.dim())?;
        let polar: Vec<(f64, f64)> = p
            .coords()
            .iter()
            .map(|c| (c.norm().ln(), c.arg()))
            .collect();
        Ok(self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let (mut log_mod, mut phase) = (0.0, 0.0);
                for (&kp, &(lr, phi)) in k.entries().iter().zip(&polar) {
                    if kp != 0 {
                        log_mod += kp as f64 * lr;
                        phase += kp as f64 * phi;
                    }
                }
                c * Complex64::from_polar(log_mod.exp(), phase)
            })
            .sum())
    }

    /// Keeps exactly the modes with `max_p |k_p| ≤ radius`.
    pub fn truncate(&self, radius: u64) -> FourierSeries {
        FourierSeries {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.max_norm() <= radius)
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }

    /// `a · f`.
    pub fn scale(&self, a: Complex64) -> FourierSeries {
        let mut coeffs: BTreeMap<_, _> = self
            .coeffs
            .iter()
            .map(|(k, c)| (k.clone(), a * c))
            .collect();
        coeffs.retain(|_, c: &mut Complex64| c.norm() >= PRUNE_THRESHOLD);
        FourierSeries {
            dim: self.dim,
            coeffs,
        }
    }

    /// `a · f + b · g`.
    pub fn linear_combination(
        &self,
        a: Complex64,
        other: &FourierSeries,
        b: Complex64,
    ) -> Result<FourierSeries> {
        check_dim(self.dim, other.dim)?;
        Self::from_accumulated(
            self.dim,
            self.coeffs
                .iter()
                .map(|(k, c)| (k.clone(), a * c))
                .chain(other.coeffs.iter().map(|(k, c)| (k.clone(), b * c))),
        )
    }

    /// Reads the JSON Lines coefficient format, one
    /// `{"k":[k1,...,kn],"re":x,"im":y}` object per line. The dimension is
    /// taken from the first mode; blank lines are skipped.
    pub fn read_jsonl<R: BufRead>(reader: R) -> Result<FourierSeries> {
        let mut dim = None;
        let mut modes = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: CoeffRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            let k = MultiIndex::new(rec.k);
            let d = *dim.get_or_insert(k.dim());
            if d == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty index".into(),
                });
            }
            if k.dim() != d {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("dimension mismatch: expected {d}, found {}", k.dim()),
                });
            }
            if !seen.insert(k.clone()) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate index {k}"),
                });
            }
            modes.push((k, Complex64::new(rec.re, rec.im)));
        }
        let dim = dim.ok_or_else(|| Error::invalid("coefficient file has no modes"))?;
        Self::from_modes(dim, modes)
    }

    /// Writes the JSON Lines coefficient format in lexicographic index order.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for (k, c) in &self.coeffs {
            let rec = CoeffRecord {
                k: k.entries().to_vec(),
                re: c.re,
                im: c.im,
            };
            serde_json::to_writer(&mut w, &rec)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffRecord {
    k: Vec<i64>,
    re: f64,
    im: f64,
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A node `z^{(l)} = (e^{2πi l₁/m}, …, e^{2πi l_n/m})` of the interpolation grid.
#[derive(Clone, Debug)]
pub struct GridPoint {
    /// `l ∈ J_m`, each entry in `1..=m`.
    pub l: Vec<u64>,
    pub angles: TorusPoint,
    pub z: PolyPoint,
}

/// Reads the grid cap from [`GRID_CAP_ENV`], falling back to the default.
pub fn grid_cap_from_env() -> u64 {
    std::env::var(GRID_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GRID_CAP)
}

/// The `m^n` roots-of-unity grid, using [`DEFAULT_GRID_CAP`].
pub fn grid_points(n: usize, m: u64) -> Result<Vec<GridPoint>> {
    grid_points_capped(n, m, DEFAULT_GRID_CAP)
}

/// The `m^n` roots-of-unity grid, refusing when `m^n` exceeds `cap`.
///
/// Points are listed with `l` in lexicographic order.
pub fn grid_points_capped(n: usize, m: u64, cap: u64) -> Result<Vec<GridPoint>> {
    if n == 0 || m == 0 {
        return Err(Error::invalid("grid needs n ≥ 1 and m ≥ 1"));
    }
    let requested = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::GridCap { requested, cap });
    }
    let unit: Vec<(f64, Complex64)> = (1..=m)
        .map(|l| {
            let ang = TAU * ((l % m) as f64) / m as f64;
            (ang, root_of_unity(l % m, m))
        })
        .collect();
    let mut out = Vec::with_capacity(requested as usize);
    let mut l = vec![1u64; n];
    loop {
        let angles = TorusPoint {
            theta: l.iter().map(|&lp| unit[(lp - 1) as usize].0).collect(),
        };
        let z = PolyPoint {
            z: l.iter().map(|&lp| unit[(lp - 1) as usize].1).collect(),
        };
        out.push(GridPoint {
            l: l.clone(),
            angles,
            z,
        });
        let mut p = n;
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            if l[p] < m {
                l[p] += 1;
                break;
            }
            l[p] = 1;
        }
    }
}

/// `e^{2πi q/m}` with the quarter-turn values exact.
fn root_of_unity(q: u64, m: u64) -> Complex64 {
    if q == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * q == m {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * q == m {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * q == 3 * m {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::cis(TAU * q as f64 / m as f64)
}
