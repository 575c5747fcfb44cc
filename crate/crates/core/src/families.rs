//! Test functions and synthetic derivative-norm profiles with known
//! quasianalyticity behaviour, plus rescaling into the normalized class.
//!
//! Family specs use the colon syntax `kind:key=value:…`:
//!
//! ```text
//! analytic:a=1.0:K=100           c_k = e^{−a|k|₁}, |k|₁ ≤ K
//! gevrey:s=2:K=10000             c_k = e^{−|k|₁^{1/s}}, |k|₁ ≤ K
//! profile:rule=factorial:s=2:Jmax=200   ln M_j = s·ln j!
//! profile:rule=constant:value=0:Jmax=50 ln M_j = value
//! file:path=coeffs.jsonl
//! ```

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::multi_index::MultiIndex;
use crate::norms::{build_profile, class_log_scale, m_j, DerivativeNormProfile};
use crate::numeric::ln_factorials;

/// Largest number of modes a generated series may have.
pub const MAX_GENERATED_MODES: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum ProfileRule {
    /// `ln M_j = s · ln j!`.
    Factorial { s: f64 },
    /// `ln M_j = value`.
    Constant { value: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Analytic { a: f64, k_max: u64 },
    Gevrey { s: f64, k_max: u64 },
    Profile { rule: ProfileRule, j_max: usize },
    File { path: PathBuf },
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::invalid(format!("cannot parse {key}={v}")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let mut pairs = Vec::new();
        for p in parts {
            let (k, v) = p.split_once('=').ok_or_else(|| {
                Error::invalid(format!("expected key=value in family spec, got {p:?}"))
            })?;
            pairs.push((k, v));
        }
        let unknown =
            |k: &str| Error::invalid(format!("unknown parameter {k:?} for family {kind}"));
        let spec = match kind {
            "analytic" => {
                let (mut a, mut k_max) = (1.0, 100);
                for (k, v) in pairs {
                    match k {
                        "a" => a = parse_num(k, v)?,
                        "K" => k_max = parse_num(k, v)?,
                        _ => return Err(unknown(k)),
                    }
                }
                FamilySpec::Analytic { a, k_max }
            }
            "gevrey" => {
                let (mut s, mut k_max) = (2.0, 10_000);
                for (k, v) in pairs {
                    match k {
                        "s" => s = parse_num(k, v)?,
                        "K" => k_max = parse_num(k, v)?,
                        _ => return Err(unknown(k)),
                    }
                }
                FamilySpec::Gevrey { s, k_max }
            }
            "profile" => {
                let (mut rule, mut s, mut value, mut j_max) = ("factorial", None, None, 200);
                for (k, v) in pairs {
                    match k {
                        "rule" => rule = v,
                        "s" => s = Some(parse_num(k, v)?),
                        "value" => value = Some(parse_num(k, v)?),
                        "Jmax" => j_max = parse_num(k, v)?,
                        _ => return Err(unknown(k)),
                    }
                }
                let rule = match rule {
                    "factorial" if value.is_none() => ProfileRule::Factorial {
                        s: s.unwrap_or(1.0),
                    },
                    "constant" if s.is_none() => ProfileRule::Constant {
                        value: value.unwrap_or(0.0),
                    },
                    "factorial" | "constant" => {
                        return Err(Error::invalid(format!(
                            "rule {rule} takes {}",
                            if rule == "factorial" { "s" } else { "value" }
                        )))
                    }
                    other => return Err(Error::invalid(format!("unknown profile rule {other:?}"))),
                };
                FamilySpec::Profile { rule, j_max }
            }
            "file" => {
                let mut path = None;
                for (k, v) in pairs {
                    match k {
                        "path" => path = Some(PathBuf::from(v)),
                        _ => return Err(unknown(k)),
                    }
                }
                FamilySpec::File {
                    path: path.ok_or_else(|| Error::invalid("file family needs path=…"))?,
                }
            }
            other => return Err(Error::invalid(format!("unknown family kind {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Analytic { a, k_max } => write!(f, "analytic:a={a}:K={k_max}"),
            FamilySpec::Gevrey { s, k_max } => write!(f, "gevrey:s={s}:K={k_max}"),
            FamilySpec::Profile { rule, j_max } => match rule {
                ProfileRule::Factorial { s } => {
                    write!(f, "profile:rule=factorial:s={s}:Jmax={j_max}")
                }
                ProfileRule::Constant { value } => {
                    write!(f, "profile:rule=constant:value={value}:Jmax={j_max}")
                }
            },
            FamilySpec::File { path } => write!(f, "file:path={}", path.display()),
        }
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Analytic { a, .. } if !(*a > 0.0 && a.is_finite()) => Err(Error::invalid(
                format!("decay rate a must be positive, got {a}"),
            )),
            FamilySpec::Gevrey { s, .. } if !(*s >= 1.0 && s.is_finite()) => Err(Error::invalid(
                format!("Gevrey exponent s must be ≥ 1, got {s}"),
            )),
            FamilySpec::Profile {
                rule: ProfileRule::Factorial { s },
                ..
            } if !s.is_finite() => Err(Error::invalid(format!(
                "exponent s must be finite, got {s}"
            ))),
            FamilySpec::Profile {
                rule: ProfileRule::Constant { value },
                ..
            } if value.is_nan() || *value == f64::INFINITY => Err(Error::invalid(format!(
                "constant value must be finite or -inf, got {value}"
            ))),
            _ => Ok(()),
        }
    }

    /// Whether the family is given by coefficients rather than by a profile.
    pub fn has_series(&self) -> bool {
        !matches!(self, FamilySpec::Profile { .. })
    }
}

/// Number of `k ∈ Zⁿ` with `|k|₁ ≤ radius`.
fn l1_ball_size(n: usize, radius: u64) -> u128 {
    // Σ_i 2^i C(n,i) C(radius,i)
    let mut total: u128 = 0;
    let mut binom_n: u128 = 1;
    let mut binom_r: u128 = 1;
    for i in 0..=n as u128 {
        if let Some(prev) = i.checked_sub(1) {
            binom_n = binom_n * (n as u128 - prev) / i;
            if i > radius as u128 {
                break;
            }
            binom_r = binom_r.saturating_mul(radius as u128 - prev) / i;
        }
        total = total.saturating_add((1u128 << i).saturating_mul(binom_n).saturating_mul(binom_r));
    }
    total
}

fn l1_ball(n: usize, out: &mut Vec<Vec<i64>>, prefix: &mut Vec<i64>, left: u64) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    let r = left as i64;
    for k in -r..=r {
        prefix.push(k);
        l1_ball(n, out, prefix, left - k.unsigned_abs());
        prefix.pop();
    }
}

fn radial_series(n: usize, radius: u64, weight: impl Fn(u64) -> f64) -> Result<FourierSeries> {
    if n == 0 {
        return Err(Error::invalid("dimension n must be positive"));
    }
    let size = l1_ball_size(n, radius);
    if size > MAX_GENERATED_MODES as u128 {
        return Err(Error::invalid(format!(
            "family would have {size} modes, more than {MAX_GENERATED_MODES}"
        )));
    }
    let mut ks = Vec::with_capacity(size as usize);
    l1_ball(n, &mut ks, &mut Vec::with_capacity(n), radius);
    FourierSeries::from_modes(
        n,
        ks.into_iter().map(|k| {
            let c = weight(k.iter().map(|v| v.unsigned_abs()).sum());
            (MultiIndex::new(k), Complex64::new(c, 0.0))
        }),
    )
}

/// The coefficient series of a family in dimension `n`. Generated series
/// are truncated to `|k|₁ ≤ K`; coefficient files carry their own dimension,
/// which must equal `n`.
pub fn gen_series(spec: &FamilySpec, n: usize) -> Result<FourierSeries> {
    spec.validate()?;
    match spec {
        FamilySpec::Analytic { a, k_max } => radial_series(n, *k_max, |l1| (-a * l1 as f64).exp()),
        FamilySpec::Gevrey { s, k_max } => {
            radial_series(n, *k_max, |l1| (-(l1 as f64).powf(1.0 / s)).exp())
        }
        FamilySpec::File { path } => {
            let file = File::open(path)?;
            let series = FourierSeries::read_jsonl(BufReader::new(file))?;
            crate::fourier::check_dim(n, series.dim())?;
            Ok(series)
        }
        FamilySpec::Profile { .. } => Err(Error::invalid(
            "profile families have no coefficient series",
        )),
    }
}

/// The closed-form profile of a `profile:` family in dimension `n`.
pub fn gen_profile(spec: &FamilySpec, n: usize) -> Result<DerivativeNormProfile> {
    spec.validate()?;
    let FamilySpec::Profile { rule, j_max } = spec else {
        return Err(Error::invalid(
            "only profile families have a closed-form profile",
        ));
    };
    let ln_m = match rule {
        ProfileRule::Factorial { s } => ln_factorials(*j_max).into_iter().map(|v| s * v).collect(),
        ProfileRule::Constant { value } => vec![*value; j_max + 1],
    };
    DerivativeNormProfile::new(n, ln_m)
}

/// The derivative-norm profile of any family: closed form for `profile:`
/// families (with `j_max` overriding the spec's `Jmax` when given), built
/// from the series up to `j_max` (default 40) otherwise.
pub fn family_profile(
    spec: &FamilySpec,
    n: usize,
    j_max: Option<usize>,
) -> Result<DerivativeNormProfile> {
    match spec {
        FamilySpec::Profile { rule, j_max: own } => gen_profile(
            &FamilySpec::Profile {
                rule: rule.clone(),
                j_max: j_max.unwrap_or(*own),
            },
            n,
        ),
        _ => {
            let j = u32::try_from(j_max.unwrap_or(40))
                .map_err(|_| Error::invalid("J_max too large"))?;
            Ok(build_profile(&gen_series(spec, n)?, j))
        }
    }
}

/// A series multiplied into the normalized class `M₃ < ½`.
#[derive(Clone, Debug)]
pub struct Rescaled {
    pub series: FourierSeries,
    /// The factor `c` applied.
    pub scale: f64,
    /// `M₃ = 0` while the function is nonzero: nothing to normalize, the
    /// series is returned unchanged.
    pub nothing_to_normalize: bool,
}

/// Returns `c·f` with `c = min(1, ½·(1−10⁻⁶)/M₃(f))`.
pub fn rescale_to_class(series: &FourierSeries) -> Result<Rescaled> {
    if series.is_empty() {
        return Err(Error::DegenerateProfile(
            "cannot normalize the zero function".into(),
        ));
    }
    let ln_m3 = m_j(series, 3);
    if ln_m3 == f64::INFINITY || ln_m3.is_nan() {
        return Err(Error::invalid("M₃ is not finite"));
    }
    let nothing_to_normalize = ln_m3 == f64::NEG_INFINITY;
    let scale = class_log_scale(ln_m3).exp();
    let series = if scale == 1.0 {
        series.clone()
    } else {
        series.scale(Complex64::new(scale, 0.0))
    };
    Ok(Rescaled {
        series,
        scale,
        nothing_to_normalize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associated::{carleman_diagnostic, CarlemanVerdict};

    fn re(series: &FourierSeries, k: &[i64]) -> f64 {
        series.coeff(&MultiIndex::new(k.to_vec())).re
    }

    #[test]
    fn analytic_small() {
        let s = gen_series(&"analytic:a=1:K=2".parse().unwrap(), 1).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(re(&s, &[0]), 1.0);
        assert_eq!(re(&s, &[-1]), (-1.0f64).exp());
        assert_eq!(re(&s, &[2]), (-2.0f64).exp());
    }

    #[test]
    fn gevrey_one_is_analytic_one() {
        let a = gen_series(&"analytic:a=1:K=30".parse().unwrap(), 2).unwrap();
        let g = gen_series(&"gevrey:s=1:K=30".parse().unwrap(), 2).unwrap();
        assert_eq!(a, g);
    }

    #[test]
    fn series_depend_only_on_l1_norm() {
        let s = gen_series(&"gevrey:s=2:K=6".parse().unwrap(), 3).unwrap();
        assert_eq!(s.len() as u128, l1_ball_size(3, 6));
        for (k, c) in s.iter() {
            assert_eq!(c.re, (-(k.l1_norm() as f64).sqrt()).exp());
        }
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(l1_ball_size(1, 10), 21);
        assert_eq!(l1_ball_size(2, 1), 5);
        assert_eq!(l1_ball_size(2, 2), 13);
        assert_eq!(l1_ball_size(3, 0), 1);
        assert!(gen_series(&"analytic:K=1000".parse().unwrap(), 3).is_err());
    }

    #[test]
    fn profile_rules() {
        let p = gen_profile(&"profile:rule=factorial:s=2:Jmax=100".parse().unwrap(), 1).unwrap();
        assert_eq!(p.j_max(), 100);
        assert!((p.ln_m()[5] - 2.0 * 120f64.ln()).abs() < 1e-12);
        let p = gen_profile(&"profile:rule=constant:Jmax=10".parse().unwrap(), 2).unwrap();
        assert!(p.ln_m().iter().all(|v| *v == 0.0));
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn spec_parsing_roundtrip_and_errors() {
        for text in [
            "analytic:a=1.5:K=100",
            "gevrey:s=2:K=10000",
            "profile:rule=factorial:s=2:Jmax=200",
            "profile:rule=constant:value=-1:Jmax=50",
            "file:path=a/b.jsonl",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        for bad in [
            "analytic:a=0",
            "gevrey:s=0.5",
            "analytic:b=1",
            "analytic:a",
            "profile:rule=wavy",
            "profile:rule=constant:s=2",
            "file",
            "spline:a=1",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn rescaling() {
        // single mode k = 2 with coefficient 1: M₃ = 2³ = 8
        let s = FourierSeries::univariate([(2, Complex64::new(1.0, 0.0))]).unwrap();
        let r = rescale_to_class(&s).unwrap();
        assert!((r.scale - (1.0 / 16.0) * (1.0 - 1e-6)).abs() < 1e-15);
        assert!(m_j(&r.series, 3) < 0.5f64.ln());

        let small = FourierSeries::univariate([(1, Complex64::new(0.1, 0.0))]).unwrap();
        let r = rescale_to_class(&small).unwrap();
        assert_eq!(r.scale, 1.0);
        assert_eq!(r.series, small);

        let constant = FourierSeries::univariate([(0, Complex64::new(3.0, 0.0))]).unwrap();
        let r = rescale_to_class(&constant).unwrap();
        assert!(r.nothing_to_normalize);
        assert_eq!(r.series, constant);

        assert!(rescale_to_class(&FourierSeries::zero(1)).is_err());
    }

    #[test]
    fn rescaling_keeps_support_and_signs() {
        let s = FourierSeries::univariate([
            (-3, Complex64::new(-2.0, 1.0)),
            (4, Complex64::new(5.0, -7.0)),
        ])
        .unwrap();
        let r = rescale_to_class(&s).unwrap();
        assert!(r.scale < 1.0);
        for ((k, a), (k2, b)) in s.iter().zip(r.series.iter()) {
            assert_eq!(k, k2);
            assert_eq!(a.re.signum(), b.re.signum());
            assert_eq!(a.im.signum(), b.im.signum());
        }
    }

    #[test]
    fn gevrey_series_profile_is_not_quasianalytic() {
        let s = gen_series(&"gevrey:s=2:K=10000".parse().unwrap(), 1).unwrap();
        let p = build_profile(&s, 50);
        let rep = carleman_diagnostic(&p, 1000.0, &Default::default()).unwrap();
        assert_eq!(
            rep.verdict,
            CarlemanVerdict::NonQuasianalyticTrend,
            "{:?}",
            rep.exponent_fit
        );
    }
}
