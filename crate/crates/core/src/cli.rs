//! Batch front end behind the `qtorus` binary.
//!
//! Commands read a coefficient file (`--input`) or a family spec
//! (`--family`), run one pipeline stage and write CSV, JSON and SVG files
//! into `--out`. Exit codes: 0 success, 2 input error, 3 degenerate
//! mathematics, 4 grid cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::associated::{
    verdict, witness, AssociatedTable, CarlemanThresholds, TrendThresholds, WitnessSeries,
};
use crate::error::{Error, Result};
use crate::families::{family_profile, gen_series, rescale_to_class, FamilySpec};
use crate::fourier::{grid_cap_from_env, FourierSeries, PolyPoint};
use crate::interpolation::{
    audit_interpolant, bound_audit, AugmentedInterpolant, BoundAuditConfig, BoundAuditReport,
    Engine, InterpolationAudit,
};
use crate::norms::{build_profile, DerivativeNormProfile};
use crate::numeric::log_grid;
use crate::report::{cell, render_json, svg_line_chart, write_atomic, CsvTable, Header};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_GRID_CAP: i32 = 4;

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegenerateProfile(_) => EXIT_DEGENERATE,
        Error::GridCap { .. } => EXIT_GRID_CAP,
        _ => EXIT_INPUT,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qtorus",
    version,
    about = "Derivative norms, associated functions and interpolants of Fourier series on the n-torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate ln M_j, the log derivative-norm profile.
    Norms(NormsArgs),
    /// Tabulate ln τ, ln τ̃, t_m and θ(m) with the r₀ estimate.
    Tau(TauArgs),
    /// Carleman diagnostic and pluripolarity witness with trend verdicts.
    Verdict(VerdictArgs),
    /// Build augmented interpolants and audit grid exactness and growth bounds.
    Interp(InterpArgs),
}

/// Where the function comes from, and where output goes.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Source {
    /// JSON Lines coefficient file.
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with = "family",
        required_unless_present = "family"
    )]
    pub input: Option<PathBuf>,
    /// Family spec such as analytic:a=1:K=100 or profile:rule=factorial:s=2:Jmax=200.
    #[arg(long, value_name = "SPEC")]
    pub family: Option<String>,
    /// Dimension n; defaults to the file's dimension, or 1 for families.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest derivative order J_max.
    #[arg(long = "Jmax", alias = "jmax", value_name = "J")]
    pub j_max: Option<usize>,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "out")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: Source,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TauArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: Source,
    /// Range of m for t_m and θ(m): A..B or A..B/STEP.
    #[arg(long, default_value = "1..100")]
    pub m: MRange,
    /// Largest r of the log-spaced r grid.
    #[arg(long, default_value_t = 1000.0)]
    pub rmax: f64,
    /// Rescale into the normalized class M₃ < ½ first.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerdictArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: Source,
    /// Range of m for the witness d_m: A..B or A..B/STEP.
    #[arg(long, default_value = "1..1000")]
    pub m: MRange,
    /// Upper end of the Carleman integral.
    #[arg(long, default_value_t = 1000.0)]
    pub rmax: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InterpArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: Source,
    /// Range of m: A..B or A..B/STEP.
    #[arg(long, default_value = "2..32")]
    pub m: MRange,
    /// Fixed sampling radius t > 1.
    #[arg(long, conflicts_with = "tm")]
    pub t: Option<f64>,
    /// Sample on D(t_m), after rescaling the function into the normalized class.
    #[arg(long)]
    pub tm: bool,
    /// Samples per m for the growth-bound audit.
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fold used for the base polynomial: alias or diagonal.
    #[arg(long, default_value = "alias")]
    pub engine: Engine,
    /// Extra node z⁰ on the torus, comma separated; each entry is a real
    /// number of modulus one or @θ for e^{iθ}. Defaults to @1,@1.5,@2,…
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<String>,
    /// Also write each interpolant as a JSON Lines coefficient file.
    #[arg(long)]
    pub export: bool,
}

/// An increasing range of positive integers written `A..B` or `A..B/STEP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl MRange {
    /// The grid `start, start+step, …` up to `end`, with `end` always included.
    pub fn values(&self) -> Vec<u64> {
        let mut v: Vec<u64> = (self.start..=self.end)
            .step_by(self.step as usize)
            .collect();
        if v.last() != Some(&self.end) {
            v.push(self.end);
        }
        v
    }
}

impl FromStr for MRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("expected A..B or A..B/STEP, got {s:?}"));
        let (range, step) = match s.split_once('/') {
            Some((r, st)) => (r, st.trim().parse().map_err(|_| bad())?),
            None => (s, 1),
        };
        let (a, b) = match range.split_once("..") {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let a = range.trim().parse().map_err(|_| bad())?;
                (a, a)
            }
        };
        if a == 0 || b < a || step == 0 {
            return Err(Error::invalid(format!(
                "m range needs 1 ≤ A ≤ B and STEP ≥ 1, got {s:?}"
            )));
        }
        Ok(MRange {
            start: a,
            end: b,
            step,
        })
    }
}

impl std::fmt::Display for MRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end)?;
        if self.step != 1 {
            write!(f, "/{}", self.step)?;
        }
        Ok(())
    }
}

/// Parses the `--z0` syntax into a point on the torus of dimension `n`.
pub fn parse_z0(text: Option<&str>, n: usize) -> Result<PolyPoint> {
    let z: Vec<Complex64> = match text {
        None => (0..n)
            .map(|p| Complex64::from_polar(1.0, 1.0 + 0.5 * p as f64))
            .collect(),
        Some(t) => t
            .split(',')
            .map(|part| {
                let part = part.trim();
                let bad = || Error::invalid(format!("cannot parse z0 component {part:?}"));
                match part.strip_prefix('@') {
                    Some(angle) => Ok(Complex64::from_polar(
                        1.0,
                        angle.parse().map_err(|_| bad())?,
                    )),
                    None => Ok(Complex64::new(part.parse().map_err(|_| bad())?, 0.0)),
                }
            })
            .collect::<Result<_>>()?,
    };
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.len(),
        });
    }
    let p = PolyPoint::new(z)?;
    p.to_torus_point()?;
    Ok(p)
}

/// The function being analysed: a series, or a bare profile.
enum Subject {
    Series(FourierSeries),
    Profile(DerivativeNormProfile),
}

fn family(source: &Source) -> Result<FamilySpec> {
    match (&source.input, &source.family) {
        (Some(path), None) => Ok(FamilySpec::File { path: path.clone() }),
        (None, Some(spec)) => spec.parse(),
        _ => Err(Error::invalid("give exactly one of --input and --family")),
    }
}

fn load(source: &Source) -> Result<(Subject, usize)> {
    let spec = family(source)?;
    if let FamilySpec::File { path } = &spec {
        let series = FourierSeries::read_jsonl(std::io::BufReader::new(fs::File::open(path)?))?;
        if let Some(n) = source.n {
            crate::fourier::check_dim(n, series.dim())?;
        }
        let n = series.dim();
        return Ok((Subject::Series(series), n));
    }
    let n = source.n.unwrap_or(1);
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if spec.has_series() {
        Ok((Subject::Series(gen_series(&spec, n)?), n))
    } else {
        Ok((Subject::Profile(family_profile(&spec, n, source.j_max)?), n))
    }
}

const DEFAULT_SERIES_J_MAX: usize = 40;

fn profile_of(subject: &Subject, j_max: Option<usize>) -> Result<DerivativeNormProfile> {
    match subject {
        Subject::Profile(p) => Ok(p.clone()),
        Subject::Series(s) => {
            let j = u32::try_from(j_max.unwrap_or(DEFAULT_SERIES_J_MAX))
                .map_err(|_| Error::invalid("J_max too large"))?;
            Ok(build_profile(s, j))
        }
    }
}

struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        write_atomic(&path, contents)?;
        self.written.push(path);
        Ok(())
    }
}

#[derive(Serialize)]
struct Echo<'a, A: Serialize> {
    command: &'static str,
    #[serde(flatten)]
    args: &'a A,
}

fn header<A: Serialize>(command: &'static str, args: &A) -> Header<serde_json::Value> {
    let value = serde_json::to_value(Echo { command, args }).expect("arguments serialize");
    Header::new(value)
}

fn profile_table(profile: &DerivativeNormProfile) -> CsvTable {
    let mut t = CsvTable::new(&["j", "lnM_j"]);
    for (j, v) in profile.ln_m().iter().enumerate() {
        t.push(vec![j.to_string(), cell(*v)]);
    }
    t
}

fn witness_table(w: &WitnessSeries) -> CsvTable {
    let mut t = CsvTable::new(&["m", "lnT", "lnTheta", "d_m", "positivity_flag"]);
    for i in 0..w.m_grid.len() {
        t.push(vec![
            w.m_grid[i].to_string(),
            cell(w.ln_t[i]),
            cell(w.ln_theta[i]),
            cell(w.witness[i]),
            w.positive[i].to_string(),
        ]);
    }
    t
}

fn witness_svg(w: &WitnessSeries) -> String {
    let pts: Vec<(f64, f64)> = w
        .m_grid
        .iter()
        .zip(&w.witness)
        .map(|(&m, &d)| (m as f64, d))
        .collect();
    svg_line_chart("pluripolarity witness d_m", "m", "d_m", &pts)
}

fn cmd_norms(args: &NormsArgs) -> Result<Vec<PathBuf>> {
    let (subject, _) = load(&args.source)?;
    let profile = profile_of(&subject, args.source.j_max)?;
    let h = header("norms", args);
    let mut out = Outputs::new(&args.source.out)?;
    out.write("profile.csv", &profile_table(&profile).render(&h)?)?;
    Ok(out.written)
}

#[derive(Serialize)]
struct TauSummary {
    dim: usize,
    j_max: usize,
    normalized: bool,
    ln_scale: f64,
    r0_estimate: Option<f64>,
    saturated: bool,
    first_saturated_r: Option<f64>,
    ln_tau_non_increasing: bool,
    ln_tau_concave_in_ln_r: bool,
    ln_t_non_increasing: bool,
    chain_holds: bool,
    witness_saturated_from: Option<u64>,
    all_positive: bool,
}

fn cmd_tau(args: &TauArgs) -> Result<Vec<PathBuf>> {
    let (subject, n) = load(&args.source)?;
    let mut profile = profile_of(&subject, args.source.j_max)?;
    if profile.is_zero() {
        return Err(Error::DegenerateProfile("zero function".into()));
    }
    let mut ln_scale = 0.0;
    if args.normalize {
        (profile, ln_scale) = profile.normalized_to_class()?;
    }
    if !(args.rmax >= 1.0) {
        return Err(Error::invalid("--rmax must be at least 1"));
    }
    let table = AssociatedTable::build(&profile, log_grid(1.0, args.rmax, 64))?;
    let w = witness(&profile, n, &args.m.values(), &TrendThresholds::default())?;

    let first_saturated = (0..table.r_grid.len()).find(|&i| table.saturated(i));
    let summary = TauSummary {
        dim: n,
        j_max: profile.j_max(),
        normalized: args.normalize,
        ln_scale,
        r0_estimate: table.r0_estimate.is_finite().then_some(table.r0_estimate),
        saturated: first_saturated.is_some(),
        first_saturated_r: first_saturated.map(|i| table.r_grid[i]),
        ln_tau_non_increasing: table.is_non_increasing(),
        ln_tau_concave_in_ln_r: table.is_concave_in_log_r(),
        ln_t_non_increasing: w.ln_t.windows(2).all(|v| v[1] <= v[0]),
        chain_holds: w.chain_holds(),
        witness_saturated_from: w.saturated_from,
        all_positive: w.positive.iter().all(|&p| p),
    };

    let h = header("tau", args);
    let mut tau = CsvTable::new(&["r", "lnTau", "lnTauShifted"]);
    for i in 0..table.r_grid.len() {
        tau.push(vec![
            cell(table.r_grid[i]),
            cell(table.ln_tau[i]),
            cell(table.ln_tau_shifted[i]),
        ]);
    }
    let mut out = Outputs::new(&args.source.out)?;
    out.write("tau.csv", &tau.render(&h)?)?;
    out.write("tm.csv", &witness_table(&w).render(&h)?)?;
    out.write("tau.json", &render_json(&h, &summary)?)?;
    Ok(out.written)
}

#[derive(Serialize)]
struct CarlemanSummary {
    verdict: crate::associated::CarlemanVerdict,
    r_max: f64,
    r_effective: f64,
    saturated: bool,
    exponent_fit: Option<crate::numeric::LinearFit>,
    linear_fit: Option<crate::numeric::LinearFit>,
    sqrt_fit: Option<crate::numeric::LinearFit>,
    final_partial_integral: f64,
    thresholds: CarlemanThresholds,
}

#[derive(Serialize)]
struct WitnessSummary {
    classification: crate::associated::TrendClass,
    fit: Option<crate::numeric::LinearFit>,
    saturated_from: Option<u64>,
    chain_holds: bool,
    all_positive: bool,
    thresholds: TrendThresholds,
}

#[derive(Serialize)]
struct VerdictReport {
    dim: usize,
    j_max: usize,
    ln_scale: f64,
    carleman: CarlemanSummary,
    witness: WitnessSummary,
}

fn cmd_verdict(args: &VerdictArgs) -> Result<Vec<PathBuf>> {
    let (subject, n) = load(&args.source)?;
    let profile = profile_of(&subject, args.source.j_max)?;
    let c_th = CarlemanThresholds::default();
    let w_th = TrendThresholds::default();
    let v = verdict(&profile, n, &args.m.values(), args.rmax, &c_th, &w_th)?;
    let (carleman, w, ln_scale) = (v.carleman, v.witness, v.ln_scale);

    let report = VerdictReport {
        dim: n,
        j_max: profile.j_max(),
        ln_scale,
        carleman: CarlemanSummary {
            verdict: carleman.verdict,
            r_max: carleman.r_max,
            r_effective: carleman.r_effective,
            saturated: carleman.saturated,
            exponent_fit: carleman.exponent_fit,
            linear_fit: carleman.linear_fit,
            sqrt_fit: carleman.sqrt_fit,
            final_partial_integral: *carleman.partial_integrals.last().expect("grid non-empty"),
            thresholds: c_th,
        },
        witness: WitnessSummary {
            classification: w.classification,
            fit: w.fit,
            saturated_from: w.saturated_from,
            chain_holds: w.chain_holds(),
            all_positive: w.positive.iter().all(|&p| p),
            thresholds: w_th,
        },
    };

    let h = header("verdict", args);
    let mut integral = CsvTable::new(&["r", "negLnTau", "argmin", "I_R"]);
    for i in 0..carleman.r_grid.len() {
        integral.push(vec![
            cell(carleman.r_grid[i]),
            cell(carleman.neg_ln_tau[i]),
            carleman.argmin[i].to_string(),
            cell(carleman.partial_integrals[i]),
        ]);
    }
    let mut out = Outputs::new(&args.source.out)?;
    out.write("verdict.json", &render_json(&h, &report)?)?;
    out.write("carleman.csv", &integral.render(&h)?)?;
    out.write("witness.csv", &witness_table(&w).render(&h)?)?;
    out.write("witness.svg", &witness_svg(&w))?;
    Ok(out.written)
}

#[derive(Serialize)]
struct InterpEntry {
    m: u64,
    t: f64,
    audit: InterpolationAudit,
    bound: BoundAuditReport,
}

#[derive(Serialize)]
struct InterpReport {
    dim: usize,
    j_max: usize,
    scale: f64,
    sup_empirical_cf: f64,
    entries: Vec<InterpEntry>,
}

fn cmd_interp(args: &InterpArgs) -> Result<Vec<PathBuf>> {
    let (subject, n) = load(&args.source)?;
    let Subject::Series(mut series) = subject else {
        return Err(Error::invalid(
            "interp needs a coefficient series, not a profile family",
        ));
    };
    if args.t.is_none() && !args.tm {
        return Err(Error::invalid("give --t VALUE or --tm"));
    }
    let mut scale = 1.0;
    if args.tm {
        let r = rescale_to_class(&series)?;
        series = r.series;
        scale = r.scale;
    }
    let profile = profile_of(&Subject::Series(series.clone()), args.source.j_max)?;
    let z0 = parse_z0(args.z0.as_deref(), n)?;
    let ms = args.m.values();
    let ln_tm = if args.tm {
        Some(witness(&profile, n, &ms, &TrendThresholds::default())?.ln_t)
    } else {
        None
    };
    let cap = grid_cap_from_env();

    let mut entries = Vec::with_capacity(ms.len());
    let mut exports = Vec::new();
    for (i, &m) in ms.iter().enumerate() {
        let t = match (&ln_tm, args.t) {
            (Some(lt), _) => {
                if !(lt[i] > 0.0) {
                    return Err(Error::DegenerateProfile(format!(
                        "ln t_m = {} ≤ 0 at m = {m}; the sampling domain is empty",
                        lt[i]
                    )));
                }
                lt[i].exp()
            }
            (None, Some(t)) => t,
            (None, None) => unreachable!("checked above"),
        };
        let interp = AugmentedInterpolant::new(&series, m, z0.clone(), args.engine)?;
        let audit = audit_interpolant(&series, &interp, cap)?;
        let bound = bound_audit(
            &series,
            &profile,
            &BoundAuditConfig {
                m,
                t,
                z0: z0.clone(),
                engine: args.engine,
                samples: args.samples,
                seed: args.seed,
            },
        )?;
        if args.export {
            let mut buf = Vec::new();
            interp.base.write_jsonl(&mut buf)?;
            exports.push((m, String::from_utf8(buf).expect("JSON is UTF-8")));
        }
        entries.push(InterpEntry { m, t, audit, bound });
    }

    let h = header("interp", args);
    let mut table = CsvTable::new(&[
        "m",
        "t",
        "maxGridError",
        "z0Error",
        "supAbsL",
        "empiricalCf",
        "empiricalC1",
        "empiricalC2",
        "degenerateZ0",
    ]);
    for e in &entries {
        table.push(vec![
            e.m.to_string(),
            cell(e.t),
            cell(e.audit.max_grid_error),
            cell(e.audit.z0_error),
            cell(e.bound.lhs_max),
            cell(e.bound.empirical_cf),
            cell(e.bound.empirical_c1),
            cell(e.bound.empirical_c2),
            e.audit.degenerate_z0.to_string(),
        ]);
    }
    let svg_pts: Vec<(f64, f64)> = entries
        .iter()
        .map(|e| (e.m as f64, e.bound.lhs_max))
        .collect();
    let report = InterpReport {
        dim: n,
        j_max: profile.j_max(),
        scale,
        sup_empirical_cf: entries
            .iter()
            .map(|e| e.bound.empirical_cf)
            .fold(0.0, f64::max),
        entries,
    };
    let mut out = Outputs::new(&args.source.out)?;
    out.write("interp.json", &render_json(&h, &report)?)?;
    out.write("interp.csv", &table.render(&h)?)?;
    out.write(
        "interp.svg",
        &svg_line_chart(
            "sampled sup of the augmented interpolant",
            "m",
            "sup |L_m|",
            &svg_pts,
        ),
    )?;
    for (m, text) in exports {
        out.write(&format!("interpolant_m{m}.jsonl"), &text)?;
    }
    Ok(out.written)
}

/// Runs a parsed command, returning the files written.
pub fn execute(cli: &Cli) -> Result<Vec<PathBuf>> {
    match &cli.command {
        Command::Norms(a) => cmd_norms(a),
        Command::Tau(a) => cmd_tau(a),
        Command::Verdict(a) => cmd_verdict(a),
        Command::Interp(a) => cmd_interp(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Messages go to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_range_parsing() {
        let r: MRange = "2..10/4".parse().unwrap();
        assert_eq!(r.values(), vec![2, 6, 10]);
        let r: MRange = "1..7/3".parse().unwrap();
        assert_eq!(r.values(), vec![1, 4, 7]);
        let r: MRange = "1..8/3".parse().unwrap();
        assert_eq!(r.values(), vec![1, 4, 7, 8]);
        assert_eq!("5".parse::<MRange>().unwrap().values(), vec![5]);
        assert_eq!("3..5".parse::<MRange>().unwrap().to_string(), "3..5");
        for bad in ["0..3", "4..2", "1..x", "1..4/0", ""] {
            assert!(bad.parse::<MRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn z0_parsing() {
        let p = parse_z0(Some("1,@3.141592653589793"), 2).unwrap();
        assert!((p.coords()[1] + 1.0).norm() < 1e-15);
        assert!(parse_z0(Some("1,1"), 3).is_err());
        assert!(matches!(
            parse_z0(Some("2"), 1),
            Err(Error::OffTorus { .. })
        ));
        assert!(parse_z0(Some("-1"), 1).is_ok());
        assert_eq!(parse_z0(None, 3).unwrap().dim(), 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::DegenerateProfile("x".into())), 3);
        assert_eq!(
            exit_code(&Error::GridCap {
                requested: 2,
                cap: 1
            }),
            4
        );
        assert_eq!(exit_code(&Error::invalid("x")), 2);
    }
}
