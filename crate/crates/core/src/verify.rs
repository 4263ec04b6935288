//! Named end-to-end checks. Each suite reproduces one group of closed-form
//! constants or randomized inequality checks and reports one
//! [`VerifyResult`] per measured quantity.

use std::f64::consts::E;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{self, exponential_windows, window_envelope, CurveKind, ModelCurve};
use crate::counterexample::{self, CounterexampleModel};
use crate::error::{Error, Result};
use crate::functionals::{self, Beta, PiArgument, TestFunction};
use crate::grid::LogGrid;
use crate::matrixlab::{self, Family};
use crate::stepfn::{self, SpectralModel, StepFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub check_name: String,
    pub status: Status,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub runtime_ms: u64,
    /// Raw quantities behind one-sided checks, or the error that stopped
    /// the check.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl VerifyResult {
    /// Passes when `|measured - expected| <= tolerance`.
    pub fn within(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64, runtime_ms: u64) -> Self {
        let ok = (measured - expected).abs() <= tolerance;
        Self {
            check_name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected,
            tolerance,
            runtime_ms,
            detail: String::new(),
        }
    }

    /// One-sided check `value <= bound`, recorded as its excess over the
    /// bound against an expected excess of zero.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64, runtime_ms: u64) -> Self {
        let excess = if value.is_nan() { f64::INFINITY } else { (value - bound).max(0.0) };
        Self::within(name, excess, 0.0, 0.0, runtime_ms).with_detail(format!("value {value:.10e}, bound {bound:e}"))
    }

    /// One-sided check `value >= bound`.
    pub fn at_least(name: impl Into<String>, value: f64, bound: f64, runtime_ms: u64) -> Self {
        let shortfall = if value.is_nan() { f64::INFINITY } else { (bound - value).max(0.0) };
        Self::within(name, shortfall, 0.0, 0.0, runtime_ms).with_detail(format!("value {value:.10e}, bound {bound:e}"))
    }

    pub fn errored(name: impl Into<String>, err: &Error, runtime_ms: u64) -> Self {
        Self {
            check_name: name.into(),
            status: Status::Fail,
            measured: f64::NAN,
            expected: f64::NAN,
            tolerance: 0.0,
            runtime_ms,
            detail: err.to_string(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Counterexample,
    Envelope,
    Convergent,
    Weights,
    Matrix,
    Majorization,
    Pi,
    Dichotomy,
    Karamata,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Counterexample,
        Suite::Envelope,
        Suite::Convergent,
        Suite::Weights,
        Suite::Matrix,
        Suite::Majorization,
        Suite::Pi,
        Suite::Dichotomy,
        Suite::Karamata,
        Suite::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counterexample => "counterexample",
            Suite::Envelope => "envelope",
            Suite::Convergent => "convergent",
            Suite::Weights => "weights",
            Suite::Matrix => "matrix",
            Suite::Majorization => "majorization",
            Suite::Pi => "pi",
            Suite::Dichotomy => "dichotomy",
            Suite::Karamata => "karamata",
            Suite::Oracles => "oracles",
        }
    }

    /// Suites selected by a name, or every suite for `all`.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map(|x| vec![x])
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Heat exponents for the counterexample suite.
    pub qs: Vec<f64>,
    pub trials: usize,
    pub dim_max: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            qs: vec![1.0, 0.5, 2.0],
            trials: 500,
            dim_max: 6,
            seed: 7,
        }
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<VerifyResult> {
    let start = Instant::now();
    let outcome = match suite {
        Suite::Counterexample => counterexample_gap(&opts.qs),
        Suite::Envelope => envelope(),
        Suite::Convergent => convergent(),
        Suite::Weights => weights(),
        Suite::Matrix => matrix(opts),
        Suite::Majorization => majorization(opts.trials, opts.seed),
        Suite::Pi => pi_windows(),
        Suite::Dichotomy => dichotomy(),
        Suite::Karamata => karamata(),
        Suite::Oracles => oracles(),
    };
    let ms = elapsed_ms(start);
    match outcome {
        Ok(mut results) => {
            for r in &mut results {
                r.runtime_ms = ms;
            }
            results
        }
        Err(e) => vec![VerifyResult::errored(suite.name(), &e, ms)],
    }
}

pub fn run_all(suites: &[Suite], opts: &VerifyOptions) -> Vec<VerifyResult> {
    suites.iter().flat_map(|&s| run_suite(s, opts)).collect()
}

fn counterexample_gap(qs: &[f64]) -> Result<Vec<VerifyResult>> {
    let mut out = Vec::new();
    for &q in qs {
        let name = |what: &str| format!("counterexample.{what} q={q}");
        match asymptotics::gap_report(q) {
            Ok(r) => {
                out.push(VerifyResult::within(name("dixmier_limit"), r.dixmier_limit, 1.0 / (E - 1.0), 1e-4, 0));
                out.push(VerifyResult::within(name("tail_limit"), r.xi_over_gamma_limit, E / (E - 1.0), 1e-4, 0));
                out.push(VerifyResult::within(name("gap_over_gamma"), r.gap / r.gamma_factor, 1.0, 5e-4, 0));
                out.push(VerifyResult::within(name("gamma_factor"), r.gamma_factor, functionals::gamma_factor(q), 1e-6, 0));
            }
            Err(e) => out.push(VerifyResult::errored(name("gap_report"), &e, 0)),
        }
    }
    Ok(out)
}

fn envelope() -> Result<Vec<VerifyResult>> {
    let model = SpectralModel::counterexample();
    let windows = exponential_windows(8..=14);
    let mut out = Vec::new();
    for (label, kind) in [("tail", CurveKind::Tail), ("dixmier", CurveKind::Dixmier)] {
        let est = window_envelope(&ModelCurve::new(&model, kind), &windows)?;
        out.push(VerifyResult::within(format!("envelope.{label}_sup"), est.limsup_est, E / (E - 1.0), 1e-2, 0));
        out.push(VerifyResult::within(format!("envelope.{label}_inf"), est.liminf_est, 1.0 / (E - 1.0), 1e-2, 0));
    }
    Ok(out)
}

fn convergent() -> Result<Vec<VerifyResult>> {
    let h = SpectralModel::Harmonic;
    let u4 = 1e4f64.ln();
    let square = TestFunction::square_cut();
    Ok(vec![
        VerifyResult::within("convergent.zeta", functionals::zeta_value(&h, u4)?, 1.0, 2e-4, 0),
        VerifyResult::within("convergent.heat_q1", functionals::heat_value(&h, 1.0, u4)?, 1.0, 1e-4, 0),
        VerifyResult::within(
            "convergent.heat_q2",
            functionals::heat_value(&h, 2.0, 1e3f64.ln())?,
            functionals::gamma_factor(2.0),
            2e-3,
            0,
        ),
        VerifyResult::within(
            "convergent.square_cut",
            functionals::generalized_heat_value(&h, &square, u4)?,
            functionals::weight_integral(&square)?,
            5e-3,
            0,
        ),
    ])
}

fn weights() -> Result<Vec<VerifyResult>> {
    Ok(vec![
        VerifyResult::within(
            "weights.heatexp_q1",
            functionals::weight_integral(&TestFunction::heat_exp(1.0)?)?,
            1.0,
            1e-10,
            0,
        ),
        VerifyResult::within(
            "weights.heatexp_q2",
            functionals::weight_integral(&TestFunction::heat_exp(2.0)?)?,
            0.886_226_93,
            1e-8,
            0,
        ),
        VerifyResult::within("weights.square_cut", functionals::weight_integral(&TestFunction::square_cut())?, 1.0, 1e-12, 0),
    ])
}

fn matrix(opts: &VerifyOptions) -> Result<Vec<VerifyResult>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        let r = matrixlab::run_suite(family, opts.trials, opts.dim_max, opts.seed)?;
        let detail = format!(
            "{} trials, worst relative margin {:.3e}, {} failures",
            r.trials,
            r.worst_margin,
            r.failures.len()
        );
        out.push(
            VerifyResult::at_least(format!("matrix.{}.worst_margin", family.name()), r.worst_margin, -matrixlab::MARGIN_TOL, 0)
                .with_detail(detail.clone()),
        );
        out.push(
            VerifyResult::within(format!("matrix.{}.failures", family.name()), r.failures.len() as f64, 0.0, 0.0, 0)
                .with_detail(detail),
        );
    }
    Ok(out)
}

/// A random pair of finite spectra. Half of the pairs take `B` as a
/// random average of `A` (so `B ≺≺ A` holds); the rest are independent.
pub fn random_spectrum_pair(rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let n = rng.random_range(1..=8);
    let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let b: Vec<f64> = if rng.random_bool(0.5) {
        // doubly substochastic image: convex mixes of entries, scaled down
        let shrink = rng.random_range(0.5..=1.0);
        let mix = rng.random_range(0.0..=1.0);
        let mean = a.iter().sum::<f64>() / n as f64;
        a.iter().map(|x| shrink * (mix * x + (1.0 - mix) * mean)).collect()
    } else {
        let m = rng.random_range(1..=8);
        (0..m).map(|_| rng.random_range(0.0..1.0)).collect()
    };
    (a, b)
}

fn majorization(trials: usize, seed: u64) -> Result<Vec<VerifyResult>> {
    let grid = LogGrid::new(-4.0, 4.0, 81)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = 0usize;
    let mut majorized = 0usize;
    for _ in 0..trials {
        let (a, b) = random_spectrum_pair(&mut rng);
        let (ma, mb) = (SpectralModel::finite(&a)?, SpectralModel::finite(&b)?);
        let (maj, tail) = stepfn::tail_equivalence_check(&ma, &mb, &grid);
        if maj != tail {
            disagreements += 1;
        }
        if maj {
            majorized += 1;
        }
    }
    Ok(vec![VerifyResult::within("majorization.disagreements", disagreements as f64, 0.0, 0.0, 0)
        .with_detail(format!("{trials} pairs, {majorized} majorized"))])
}

fn pi_windows() -> Result<Vec<VerifyResult>> {
    let full = PiArgument::Indicator(functionals::double_exponential_windows(30, |j| j as f64));
    let est = functionals::pi_functional(&full, 8..=12)?;
    let dev_full = est.probes.iter().map(|p| (p.1 - 1.0).abs()).fold(0.0, f64::max);
    let short = PiArgument::Indicator(functionals::double_exponential_windows(30, |_| 1.0));
    let est_short = functionals::pi_functional(&short, 8..=12)?;
    let dev_short = (8..=12u32)
        .zip(&est_short.probes)
        .map(|(k, p)| (p.1 - 1.0 / k as f64).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        VerifyResult::within("pi.full_windows", dev_full, 0.0, 0.02, 0),
        VerifyResult::within("pi.unit_windows", dev_short, 0.0, 0.02, 0),
        VerifyResult::at_most("pi.unit_windows_limsup", est_short.limsup_est, 2.0 / 8.0, 0),
    ])
}

/// Grid for the boundedness dichotomy: `[0, e^14 + 14]` at `10^7` points.
pub fn dichotomy_grid() -> Result<LogGrid> {
    LogGrid::new(0.0, 14f64.exp() + 14.0, 10_000_000)
}

fn dichotomy() -> Result<Vec<VerifyResult>> {
    let model = SpectralModel::counterexample();
    let grid = dichotomy_grid()?;
    let raw = functionals::heat_curve(&model, 1.0, &grid)?;
    let lo = 14f64.exp();
    let raw_max = raw.points().filter(|p| p.0 >= lo).map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let mean = functionals::cesaro(&raw)?;
    let mean_max = mean.points().filter(|p| p.0 >= 1.0).map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(vec![
        VerifyResult::at_least("dichotomy.raw_heat_max", raw_max, 1e3, 0),
        VerifyResult::at_most("dichotomy.cesaro_max", mean_max, 2.5, 0),
    ])
}

fn karamata() -> Result<Vec<VerifyResult>> {
    let grid = LogGrid::new(0.0, 10.0, 41)?;
    let lin = Beta::Linear { slope: 1.0 };
    let d1 = functionals::karamata_compare(&lin, 1.0, &grid)?.max_difference();
    let d2 = functionals::karamata_compare(&lin, 2.0, &grid)?.max_difference();
    let h = SpectralModel::Harmonic;
    let at = LogGrid::new(1e4f64.ln(), 1e4f64.ln() + 1.0, 2)?;
    let k = functionals::karamata_compare(&Beta::DistributionOf(&h), 1.0, &at)?;
    let dh = (k.laplace.values[0] - k.scaled.values[0]).abs();
    Ok(vec![
        VerifyResult::within("karamata.linear_q1", d1, 0.0, 1e-10, 0),
        VerifyResult::within("karamata.linear_q2", d2, 0.0, 1e-8, 0),
        VerifyResult::within("karamata.harmonic_distribution", dh, 0.0, 1e-3, 0),
    ])
}

/// The first `k` plateaus of the counterexample as an explicit step function.
pub fn counterexample_truncation(k: u32) -> Result<StepFunction> {
    let pairs: Vec<(f64, f64)> = (1..=k)
        .map(|j| (counterexample::boundary(j), counterexample::log_value(j)))
        .collect();
    StepFunction::new(&pairs)
}

fn relative_error(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Largest relative disagreement between the closed-form counterexample and
/// the generic step-function code on the 4-plateau truncation, as
/// `(partial integral, tail trace)`.
pub fn truncation_disagreement() -> Result<(f64, f64)> {
    let cx = CounterexampleModel::default();
    let step = counterexample_truncation(4)?;
    let explicit = SpectralModel::Explicit(step.clone());
    // partial integrals agree up to the end of plateau 4
    let end = counterexample::boundary(4);
    let partial = (0..=2000)
        .map(|i| -3.0 + (end + 3.0) * i as f64 / 2000.0)
        .map(|u| relative_error(cx.cx_partial_integral(u), explicit.partial_integral_log(u)))
        .fold(0.0, f64::max);
    // tail traces agree while the level 1/t stays above plateau 5
    let top = 5f64.exp();
    let tail = (0..=2000)
        .map(|i| 0.5 + (top - 0.5 - 1e-9) * i as f64 / 2000.0)
        .map(|u| relative_error(cx.cx_tail_trace(u), step.tail_trace_at(u)))
        .fold(0.0, f64::max);
    Ok((partial, tail))
}

/// `max |lidskii - brute force|` for the harmonic model at `t ∈ {10², 10⁴, 10⁶}`.
pub fn lidskii_disagreement() -> Result<f64> {
    let h = SpectralModel::Harmonic;
    let mut worst: f64 = 0.0;
    for t in [1e2f64, 1e4, 1e6] {
        let u = t.ln();
        let threshold = u * (-u).exp();
        let brute: f64 = (1..=1_000_000u64)
            .map(|n| 1.0 / n as f64)
            .filter(|&l| l > threshold)
            .fold(0.0, |acc, l| acc + l);
        worst = worst.max((functionals::lidskii_value(&h, u)? - brute / u).abs());
    }
    Ok(worst)
}

fn oracles() -> Result<Vec<VerifyResult>> {
    let (partial, tail) = truncation_disagreement()?;
    Ok(vec![
        VerifyResult::within("oracles.partial_integral", partial, 0.0, 1e-12, 0),
        VerifyResult::within("oracles.tail_trace", tail, 0.0, 1e-12, 0),
        VerifyResult::within("oracles.lidskii", lidskii_disagreement()?, 0.0, 0.0, 0),
    ])
}
