//! Grid-exactness checks and empirical growth constants for interpolants.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::augmented::{AugmentedInterpolant, Engine};
use crate::associated::log_tau;
use crate::error::{Error, Result};
use crate::fourier::{
    grid_points_capped, FourierSeries, PolyPoint, SamplingAnnulus, DEFAULT_GRID_CAP,
};
use crate::multi_index::MultiIndex;
use crate::norms::DerivativeNormProfile;
use crate::numeric::log_sum_exp;

/// Relative tolerance of the exactness checks: errors are compared with
/// this times `1 + Σ|c_k|`.
pub const INTERPOLATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct InterpolationAudit {
    pub m: u64,
    pub dim: usize,
    pub engine: Engine,
    pub grid_points: usize,
    /// `max_l |L(z^{(l)}) − f(z^{(l)})|`.
    pub max_grid_error: f64,
    /// `|L(z⁰) − f(z⁰)|`.
    pub z0_error: f64,
    pub tolerance: f64,
    pub degenerate_z0: bool,
    pub uncovered_modes: Vec<MultiIndex>,
    /// Grid error within tolerance, and the `z⁰` error too unless `z⁰` is degenerate.
    pub passed: bool,
}

/// Compares `interp` with `series` on the whole `m^n` grid and at `z⁰`.
pub fn audit_interpolant(
    series: &FourierSeries,
    interp: &AugmentedInterpolant,
    cap: u64,
) -> Result<InterpolationAudit> {
    let grid = grid_points_capped(series.dim(), interp.m, cap)?;
    let mut max_grid_error: f64 = 0.0;
    for g in &grid {
        let err = (interp.eval(&g.z)? - series.eval_torus(&g.angles)?).norm();
        max_grid_error = max_grid_error.max(err);
    }
    let z0_error = (interp.eval(&interp.z0)? - interp.f_z0).norm();
    let tolerance = INTERPOLATION_TOLERANCE * (1.0 + series.abs_sum());
    let passed = max_grid_error < tolerance && (interp.degenerate_z0 || z0_error < tolerance);
    Ok(InterpolationAudit {
        m: interp.m,
        dim: series.dim(),
        engine: interp.engine,
        grid_points: grid.len(),
        max_grid_error,
        z0_error,
        tolerance,
        degenerate_z0: interp.degenerate_z0,
        uncovered_modes: interp.uncovered_modes.clone(),
        passed,
    })
}

/// Builds the augmented interpolant and audits it on the grid, refusing grids
/// larger than [`DEFAULT_GRID_CAP`].
pub fn interpolation_audit(
    series: &FourierSeries,
    m: u64,
    z0: PolyPoint,
    engine: Engine,
) -> Result<InterpolationAudit> {
    let interp = AugmentedInterpolant::new(series, m, z0, engine)?;
    audit_interpolant(series, &interp, DEFAULT_GRID_CAP)
}

#[derive(Clone, Debug)]
pub struct BoundAuditConfig {
    pub m: u64,
    /// Outer radius of the sampled polyannulus `1/t ≤ |z_p| ≤ t`.
    pub t: f64,
    pub z0: PolyPoint,
    pub engine: Engine,
    pub samples: usize,
    pub seed: u64,
}

/// Sampled maxima and the matching right-hand sides of the growth bounds,
/// all in log form where overflow is possible.
#[derive(Clone, Debug, Serialize)]
pub struct BoundAuditReport {
    pub m: u64,
    pub t: f64,
    pub engine: Engine,
    pub samples: usize,
    pub seed: u64,
    pub degenerate_z0: bool,
    /// `max |L_m(f; z⁰; z)|` over the samples.
    pub lhs_max: f64,
    /// `max |L_m(f; z)|` over the samples.
    pub base_max: f64,
    /// `max` of the correction term over the samples.
    pub correction_max: f64,
    /// `ln(1 + Σ_{r=1}^{m} r τ_f(r) t^{nr})`.
    pub ln_rhs: f64,
    /// `ln(1 + Σ_{r=1}^{m−1} τ_f(r) t^{nr})`.
    pub ln_rhs_base: f64,
    /// `ln(1 + m τ_f(m) t^m)`.
    pub ln_rhs_correction: f64,
    /// `lhs_max / rhs`.
    pub empirical_cf: f64,
    /// `base_max / rhs_base`.
    pub empirical_c1: f64,
    /// `correction_max / rhs_correction`.
    pub empirical_c2: f64,
}

/// Samples the augmented interpolant of `series` on the polyannulus of
/// radius `t` and compares it with the growth bounds built from `profile`.
pub fn bound_audit(
    series: &FourierSeries,
    profile: &DerivativeNormProfile,
    config: &BoundAuditConfig,
) -> Result<BoundAuditReport> {
    if config.m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    if config.samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    let n = series.dim();
    let annulus = SamplingAnnulus::new(n, config.t)?;
    let interp = AugmentedInterpolant::new(series, config.m, config.z0.clone(), config.engine)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (mut lhs_max, mut base_max, mut correction_max) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..config.samples {
        let z = annulus.sample(&mut rng);
        let base = interp.eval_base(&z)?;
        let corr = interp.eval_correction(&z)?;
        lhs_max = lhs_max.max((base + corr).norm());
        base_max = base_max.max(base.norm());
        correction_max = correction_max.max(corr.norm());
    }

    let ln_t = config.t.ln();
    let nf = n as f64;
    let mut full = vec![0.0];
    let mut base_terms = vec![0.0];
    for r in 1..=config.m {
        let rf = r as f64;
        let lt = log_tau(profile, rf)?;
        full.push(rf.ln() + lt + nf * rf * ln_t);
        if r < config.m {
            base_terms.push(lt + nf * rf * ln_t);
        }
    }
    let mf = config.m as f64;
    let ln_rhs = log_sum_exp(&full);
    let ln_rhs_base = log_sum_exp(&base_terms);
    let ln_rhs_correction = log_sum_exp(&[0.0, mf.ln() + log_tau(profile, mf)? + mf * ln_t]);
    let ratio = |v: f64, ln_bound: f64| (v.ln() - ln_bound).exp();

    Ok(BoundAuditReport {
        m: config.m,
        t: config.t,
        engine: config.engine,
        samples: config.samples,
        seed: config.seed,
        degenerate_z0: interp.degenerate_z0,
        lhs_max,
        base_max,
        correction_max,
        ln_rhs,
        ln_rhs_base,
        ln_rhs_correction,
        empirical_cf: ratio(lhs_max, ln_rhs),
        empirical_c1: ratio(base_max, ln_rhs_base),
        empirical_c2: ratio(correction_max, ln_rhs_correction),
    })
}

/// Unit-modulus point with the given angles.
pub fn torus_node(angles: &[f64]) -> PolyPoint {
    PolyPoint::new(
        angles
            .iter()
            .map(|&a| Complex64::from_polar(1.0, a))
            .collect(),
    )
    .expect("unit-modulus coordinates are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::build_profile;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn alias_engine_is_exact_on_random_bivariate_series() {
        let modes = [
            ([3, -1], 0.5),
            ([-4, 2], -1.25),
            ([0, 7], 2.0),
            ([5, 5], 0.75),
        ];
        let s = FourierSeries::from_modes(
            2,
            modes
                .iter()
                .map(|(k, c)| (MultiIndex::from(*k), Complex64::new(*c, 0.3))),
        )
        .unwrap();
        let a = interpolation_audit(&s, 3, torus_node(&[0.4, 2.1]), Engine::Alias).unwrap();
        assert_eq!(a.grid_points, 9);
        assert!(a.passed, "{a:?}");
        assert!(a.max_grid_error < 1e-9);
    }

    #[test]
    fn diagonal_engine_reports_the_gap() {
        let s =
            FourierSeries::from_modes(2, [(MultiIndex::from([1, 0]), Complex64::new(9.0, 0.0))])
                .unwrap();
        let a = interpolation_audit(&s, 2, torus_node(&[0.4, 2.1]), Engine::Diagonal).unwrap();
        assert!(!a.passed);
        assert!(a.max_grid_error > 1.0);
        assert_eq!(a.uncovered_modes, vec![MultiIndex::from([1, 0])]);
    }

    #[test]
    fn diagonal_engine_is_exact_in_one_variable() {
        let s =
            FourierSeries::univariate([(-7, one()), (4, Complex64::new(0.0, 2.0)), (11, one())])
                .unwrap();
        let a = interpolation_audit(&s, 5, torus_node(&[1.0]), Engine::Diagonal).unwrap();
        assert!(a.passed, "{a:?}");
    }

    #[test]
    fn grid_cap_is_enforced() {
        let s = FourierSeries::zero(3);
        let interp =
            AugmentedInterpolant::new(&s, 10, torus_node(&[0.1, 0.2, 0.3]), Engine::Alias).unwrap();
        assert!(matches!(
            audit_interpolant(&s, &interp, 999),
            Err(Error::GridCap {
                requested: 1000,
                cap: 999
            })
        ));
    }

    #[test]
    fn bound_audit_single_mode() {
        let s = FourierSeries::univariate([(1, one())]).unwrap();
        let p = build_profile(&s, 12);
        let mut sup: f64 = 0.0;
        for m in 2..=32 {
            let cfg = BoundAuditConfig {
                m,
                t: 1.5,
                z0: torus_node(&[1.0]),
                engine: Engine::Alias,
                samples: 64,
                seed: 7,
            };
            let rep = bound_audit(&s, &p, &cfg).unwrap();
            assert!(rep.empirical_cf.is_finite() && rep.empirical_cf > 0.0);
            assert!(rep.lhs_max <= 1.5 + 1e-12);
            sup = sup.max(rep.empirical_cf);
        }
        assert!(sup < 10.0);
    }

    #[test]
    fn bound_audit_is_reproducible() {
        let s = FourierSeries::univariate([(-2, one()), (3, Complex64::new(0.5, 0.5))]).unwrap();
        let p = build_profile(&s, 10);
        let cfg = BoundAuditConfig {
            m: 4,
            t: 1.2,
            z0: torus_node(&[0.9]),
            engine: Engine::Alias,
            samples: 100,
            seed: 42,
        };
        let a = bound_audit(&s, &p, &cfg).unwrap();
        let b = bound_audit(&s, &p, &cfg).unwrap();
        assert_eq!(a.lhs_max.to_bits(), b.lhs_max.to_bits());
        assert!(a.correction_max > 0.0);
    }
}
