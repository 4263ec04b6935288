//! Command-line front end: argument types, dispatch and output formatting.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::asymptotics::{self, GapReport};
use crate::error::{Error, Result};
use crate::functionals::{self, TestFunction};
use crate::grid::{Curve, LogGrid};
use crate::matrixlab::{self, Family, InequalityReport};
use crate::model_io::resolve_model;
use crate::stepfn::{self, MajorizationReport, SpectralModel};
use crate::verify::{self, Suite, VerifyOptions, VerifyResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker pool size.
pub const THREADS_ENV: &str = "SINGTRACE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "singtrace", version, about = "Singular-value functionals, limit curves and trace inequality checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a functional curve of a spectral model on a log grid.
    Curve(CurveArgs),
    /// Run named check suites and report pass/fail per check.
    Verify(VerifyArgs),
    /// Compare two models by majorization and by tail traces.
    Majorize(MajorizeArgs),
    /// Gap report for the oscillating counterexample.
    Counterexample(CounterexampleArgs),
    /// Randomized matrix trace inequality suites.
    MatrixSuite(MatrixSuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub umin: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub umax: f64,
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
}

impl GridArgs {
    pub fn grid(&self) -> Result<LogGrid> {
        LogGrid::new(self.umin, self.umax, self.points)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Model file, or one of `harmonic`, `counterexample`, `power:<c>:<p>`.
    #[arg(long)]
    pub model: String,
    /// zeta | heat | gheat | dixmier | tail | lidskii | cesaro-of:<functional>
    #[arg(long)]
    pub functional: String,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Test function for `gheat`: heatexp:<q> | squarecut | tailind
    #[arg(long = "f")]
    pub test_function: Option<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Restrict the counterexample suite to one exponent.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MajorizeArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 14)]
    pub k_min: u32,
    #[arg(long, default_value_t = 20)]
    pub k_max: u32,
    /// Where to write the probe table CSV. Printed after the JSON when absent.
    #[arg(long)]
    pub probe_table: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixSuiteArgs {
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 6)]
    pub dim_max: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// power | loewner | convex | sandwich | all
    #[arg(long, default_value = "all")]
    pub family: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A curve as written by `curve --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub metadata: CurveMetadata,
    pub grid: LogGrid,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMetadata {
    pub model: String,
    pub functional: String,
    pub params: std::collections::BTreeMap<String, serde_json::Value>,
}

impl CurveDocument {
    pub fn from_curve(curve: &Curve, model: &str) -> Self {
        Self {
            metadata: CurveMetadata {
                model: model.to_string(),
                functional: curve.functional_name.clone(),
                params: curve.params.clone(),
            },
            grid: curve.grid,
            values: curve.values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizeOutput {
    pub majorization: MajorizationReport,
    pub tail_dominance: MajorizationReport,
    pub agree: bool,
}

/// Parses a `--f` selector.
pub fn parse_test_function(s: &str) -> Result<TestFunction> {
    match s {
        "squarecut" => Ok(TestFunction::square_cut()),
        "tailind" => Ok(TestFunction::tail_indicator()),
        _ => match s.strip_prefix("heatexp:") {
            Some(q) => TestFunction::heat_exp(parse_number(q, "heatexp exponent")?),
            None => Err(Error::Domain(format!("unknown test function `{s}`"))),
        },
    }
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Domain(format!("{what} `{s}` is not a number")))
}

/// Samples the functional named by `selector` on `grid`.
pub fn build_curve(model: &SpectralModel, selector: &str, q: f64, f: Option<&TestFunction>, grid: &LogGrid) -> Result<Curve> {
    if let Some(inner) = selector.strip_prefix("cesaro-of:") {
        if inner.starts_with("cesaro-of:") {
            return Err(Error::Domain("nested cesaro-of is not supported".into()));
        }
        return functionals::cesaro(&build_curve(model, inner, q, f, grid)?);
    }
    match selector {
        "zeta" => functionals::zeta_curve(model, grid),
        "heat" => functionals::heat_curve(model, q, grid),
        "gheat" => {
            let f = f.ok_or_else(|| Error::Domain("gheat needs --f".into()))?;
            functionals::generalized_heat_curve(model, f, grid)
        }
        "dixmier" => functionals::dixmier_curve(model, grid),
        "tail" => functionals::tail_curve(model, grid),
        "lidskii" => functionals::lidskii_curve(model, grid),
        other => Err(Error::Domain(format!("unknown functional `{other}`"))),
    }
}

/// CSV with 17 significant digits per value.
pub fn curve_csv(curve: &Curve) -> String {
    let mut out = String::with_capacity(curve.len() * 52 + 24);
    out.push_str("u,t_is_exp_u,value\n");
    for (u, v) in curve.points() {
        let _ = writeln!(out, "{u:.16e},{:.16e},{v:.16e}", u.exp());
    }
    out
}

pub fn probe_table_csv(report: &GapReport) -> String {
    let mut out = String::from("k,u,dixmier,tail\n");
    for p in &report.probes {
        let _ = writeln!(out, "{},{:.16e},{:.16e},{:.16e}", p.k, p.u, p.dixmier, p.tail);
    }
    out
}

pub fn verify_csv(results: &[VerifyResult]) -> String {
    let mut out = String::from("check_name,status,measured,expected,tolerance,runtime_ms\n");
    for r in results {
        let status = match r.status {
            verify::Status::Pass => "pass",
            verify::Status::Fail => "fail",
            verify::Status::Skip => "skip",
        };
        let _ = writeln!(
            out,
            "{},{status},{:.16e},{:.16e},{:.16e},{}",
            r.check_name, r.measured, r.expected, r.tolerance, r.runtime_ms
        );
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path` when given, otherwise to `out`.
fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Failure of a command, split by exit code.
enum Failure {
    Usage(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

/// Runs one command, writing artifacts to files or `out`. Returns the
/// process exit code: 0 when everything passed, 1 when a check failed and
/// 2 for usage or input errors.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Checks) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match &config.command {
        Command::Curve(a) => {
            let grid = a.grid.grid()?;
            let model = resolve_model(&a.model)?;
            let f = a.test_function.as_deref().map(parse_test_function).transpose()?;
            let curve = build_curve(&model, &a.functional, a.q, f.as_ref(), &grid)?;
            let text = match a.format {
                Format::Csv => curve_csv(&curve),
                Format::Json => to_json(&CurveDocument::from_curve(&curve, &a.model))?,
            };
            emit(&text, a.output.as_ref(), out)?;
            Ok(())
        }
        Command::Verify(a) => {
            let suites = Suite::parse_selection(&a.suite)?;
            let mut opts = VerifyOptions {
                trials: a.trials,
                seed: a.seed,
                ..VerifyOptions::default()
            };
            if let Some(q) = a.q {
                opts.qs = vec![q];
            }
            let results = verify::run_all(&suites, &opts);
            let text = match a.format {
                Format::Csv => verify_csv(&results),
                Format::Json => to_json(&results)?,
            };
            emit(&text, a.output.as_ref(), out)?;
            if results.iter().all(VerifyResult::passed) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Majorize(a) => {
            let grid = a.grid.grid()?;
            let (ma, mb) = (resolve_model(&a.a)?, resolve_model(&a.b)?);
            let majorization = stepfn::majorizes(&ma, &mb, &grid);
            let tail_dominance = stepfn::tail_dominance(&ma, &mb, &grid);
            let agree = majorization.verdict == tail_dominance.verdict;
            let doc = MajorizeOutput {
                majorization,
                tail_dominance,
                agree,
            };
            emit(&to_json(&doc)?, a.output.as_ref(), out)?;
            if agree {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Counterexample(a) => {
            let report = asymptotics::gap_report_with_range(a.q, a.k_min, a.k_max);
            let report = match report {
                Ok(r) => r,
                Err(e @ Error::NotConverged(_)) => {
                    let _ = writeln!(out, "{e}");
                    return Err(Failure::Checks);
                }
                Err(e) => return Err(e.into()),
            };
            emit(&to_json(&report)?, a.output.as_ref(), out)?;
            let table = probe_table_csv(&report);
            emit(&table, a.probe_table.as_ref(), out)?;
            Ok(())
        }
        Command::MatrixSuite(a) => {
            let families: Vec<Family> = if a.family == "all" {
                Family::ALL.to_vec()
            } else {
                vec![a.family.parse()?]
            };
            let reports = families
                .into_iter()
                .map(|f| matrixlab::run_suite(f, a.trials, a.dim_max, a.seed))
                .collect::<Result<Vec<InequalityReport>>>()?;
            emit(&to_json(&reports)?, a.output.as_ref(), out)?;
            if reports.iter().all(InequalityReport::passed) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

/// Sizes the global worker pool from `SINGTRACE_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Domain(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))
}
