//! Asymptotic functional curves of a spectral model, sampled on log grids.
//!
//! Each curve has a point evaluator `*_value(model, u)` with `t = e^u` and a
//! grid builder that evaluates all points in parallel.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::LimitEstimate;
use crate::counterexample;
use crate::error::{domain, Error, Result};
use crate::grid::{Curve, LogGrid};
use crate::logspace::{softplus, LogAccumulator};
use crate::quad;
use crate::series;
use crate::stepfn::SpectralModel;

/// Below this `u` the ζ-curve is dominated by the `t → 0` blow-up.
pub const ZETA_MIN_U: f64 = 0.1;

/// Heat terms `exp(-(tμ)^{-q})` with exponent beyond this are dropped.
pub const HEAT_CUTOFF: f64 = 46.0;

/// Harmonic heat sums longer than this switch to an Euler–Maclaurin tail.
pub const HARMONIC_DIRECT_TERMS: u64 = 20_000;

/// Cap on explicit term loops over the harmonic sequence.
const MAX_DIRECT_TERMS: u64 = 10_000_000;

/// Grid spacing above which a Cesàro mean is flagged as coarse.
pub const CESARO_COARSE_SPACING: f64 = 0.1;

/// `β(t)/t` above this on the horizon counts as unbounded.
pub const KARAMATA_BOUND: f64 = 1e6;

fn sample<F>(grid: LogGrid, name: &str, f: F) -> Result<Curve>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let values = (0..grid.count)
        .into_par_iter()
        .map(|i| f(grid.u(i)))
        .collect::<Result<Vec<f64>>>()?;
    Curve::new(grid, values, name)
}

fn require_dixmier(model: &SpectralModel, op: &str) -> Result<()> {
    if model.in_dixmier_ideal() {
        Ok(())
    } else {
        domain(format!("{op}: model `{}` is not in the Dixmier ideal", model.kind_name()))
    }
}

fn with_model(curve: Curve, model: &SpectralModel) -> Curve {
    curve.with_param("model", model.kind_name())
}

// ---------------------------------------------------------------- test functions

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TestFunctionKind {
    /// `f(s) = exp(-s^{-q})`.
    HeatExp { q: f64 },
    /// `f(s) = s²` on `[0, 1]`, zero beyond.
    SquareCut,
    /// `f(s) = [s > 1]`.
    TailIndicator,
    /// Zero below the first knot, linear between knots, constant after the
    /// last one.
    PiecewiseMonotone { knots: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFlags {
    pub bounded: bool,
    pub vanishing_at_zero: bool,
    /// `f(0) = f'(0) = 0`, i.e. `|f(s)| <= c min(1, s²)`.
    pub c2_at_zero: bool,
}

impl FunctionFlags {
    pub const ALL: Self = Self {
        bounded: true,
        vanishing_at_zero: true,
        c2_at_zero: true,
    };
}

/// Result of checking the declared flags on sample points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlagCheck {
    pub bounded: bool,
    pub vanishing_at_zero: bool,
    pub c2_at_zero: bool,
    /// `max |f(s)| / min(1, s²)` over the samples.
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub kind: TestFunctionKind,
    pub flags: FunctionFlags,
}

impl TestFunction {
    /// Builds a test function and verifies every declared flag on
    /// 1000 log-spaced samples.
    pub fn new(kind: TestFunctionKind, flags: FunctionFlags) -> Result<Self> {
        match &kind {
            TestFunctionKind::HeatExp { q } if !(*q > 0.0 && q.is_finite()) => {
                return domain(format!("heat exponent must be positive, got {q}"));
            }
            TestFunctionKind::PiecewiseMonotone { knots } => {
                if knots.is_empty() {
                    return domain("piecewise function needs at least one knot");
                }
                for (i, &(s, v)) in knots.iter().enumerate() {
                    if !(s >= 0.0 && s.is_finite() && v.is_finite()) {
                        return domain(format!("knot {i}: invalid ({s}, {v})"));
                    }
                    if i > 0 && s <= knots[i - 1].0 {
                        return domain(format!("knot {i}: abscissa {s} does not increase"));
                    }
                }
            }
            _ => {}
        }
        let f = Self { kind, flags };
        let check = f.check_flags();
        for (declared, holds, name) in [
            (flags.bounded, check.bounded, "bounded"),
            (flags.vanishing_at_zero, check.vanishing_at_zero, "vanishing_at_zero"),
            (flags.c2_at_zero, check.c2_at_zero, "c2_at_zero"),
        ] {
            if declared && !holds {
                return domain(format!("declared flag `{name}` fails on samples of {}", f.descriptor()));
            }
        }
        Ok(f)
    }

    pub fn heat_exp(q: f64) -> Result<Self> {
        Self::new(TestFunctionKind::HeatExp { q }, FunctionFlags::ALL)
    }

    pub fn square_cut() -> Self {
        Self {
            kind: TestFunctionKind::SquareCut,
            flags: FunctionFlags::ALL,
        }
    }

    pub fn tail_indicator() -> Self {
        Self {
            kind: TestFunctionKind::TailIndicator,
            flags: FunctionFlags::ALL,
        }
    }

    pub fn piecewise(knots: Vec<(f64, f64)>, flags: FunctionFlags) -> Result<Self> {
        Self::new(TestFunctionKind::PiecewiseMonotone { knots }, flags)
    }

    pub fn eval(&self, s: f64) -> f64 {
        match &self.kind {
            TestFunctionKind::HeatExp { q } => {
                if s <= 0.0 {
                    0.0
                } else {
                    (-s.powf(-q)).exp()
                }
            }
            TestFunctionKind::SquareCut => {
                if (0.0..=1.0).contains(&s) {
                    s * s
                } else {
                    0.0
                }
            }
            TestFunctionKind::TailIndicator => {
                if s > 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunctionKind::PiecewiseMonotone { knots } => {
                let (s0, f0) = knots[0];
                if s < s0 {
                    return 0.0;
                }
                match knots.iter().position(|k| k.0 > s) {
                    None => knots[knots.len() - 1].1,
                    Some(0) => f0,
                    Some(j) => {
                        let (a, fa) = knots[j - 1];
                        let (b, fb) = knots[j];
                        fa + (fb - fa) * (s - a) / (b - a)
                    }
                }
            }
        }
    }

    /// Abscissae where `f` has a jump or a kink.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.kind {
            TestFunctionKind::HeatExp { .. } => Vec::new(),
            TestFunctionKind::SquareCut | TestFunctionKind::TailIndicator => vec![1.0],
            TestFunctionKind::PiecewiseMonotone { knots } => knots.iter().map(|k| k.0).collect(),
        }
    }

    pub fn descriptor(&self) -> String {
        match &self.kind {
            TestFunctionKind::HeatExp { q } => format!("heatexp:{q}"),
            TestFunctionKind::SquareCut => "squarecut".into(),
            TestFunctionKind::TailIndicator => "tailind".into(),
            TestFunctionKind::PiecewiseMonotone { knots } => format!("piecewise:{knots:?}"),
        }
    }

    /// Samples `f` at 1000 log-spaced points in `[1e-6, 1e6]`.
    ///
    /// The `c2_at_zero` test accepts when the ratio `|f(s)|/min(1, s²)` on
    /// `s < 1e-3` never exceeds its maximum on `s >= 1e-3`.
    pub fn check_flags(&self) -> FlagCheck {
        let samples: Vec<f64> = (0..1000).map(|i| 10f64.powf(-6.0 + 12.0 * i as f64 / 999.0)).collect();
        let values: Vec<f64> = samples.iter().map(|&s| self.eval(s)).collect();
        let bounded = values.iter().all(|v| v.is_finite());
        let ratio = |s: f64, v: f64| v.abs() / s.min(1.0).powi(2);
        let mut near = 0.0f64;
        let mut far = 0.0f64;
        for (&s, &v) in samples.iter().zip(&values) {
            if s < 1e-3 {
                near = near.max(ratio(s, v));
            } else {
                far = far.max(ratio(s, v));
            }
        }
        FlagCheck {
            bounded,
            vanishing_at_zero: self.eval(0.0) == 0.0,
            c2_at_zero: bounded && near <= far * (1.0 + 1e-9),
            c: near.max(far),
        }
    }
}

// ---------------------------------------------------------------- ζ-curve

/// `(1/t) τ(A^{1+1/t})` at `t = e^u`.
pub fn zeta_value(model: &SpectralModel, u: f64) -> Result<f64> {
    let inv_t = (-u).exp();
    let s = 1.0 + inv_t;
    match model {
        SpectralModel::Finite(f) | SpectralModel::Explicit(f) => Ok((f.log_sum(&|w| s * w) - u).exp()),
        SpectralModel::Harmonic => Ok(series::scaled_zeta_near_one(u)),
        SpectralModel::PowerTail { c, p } => {
            // ∫ c^s (1+x)^{-ps} dx = c^s / (ps - 1), with ps - 1 = (p - 1) + p/t
            let denom = (p - 1.0) + p * inv_t;
            if denom <= 0.0 {
                return domain(format!("ζ-curve diverges for power tail p = {p} at u = {u}"));
            }
            Ok((s * c.ln() - denom.ln() - u).exp())
        }
        SpectralModel::Counterexample(m) => {
            // plateau k: len_k e^{-s e^k} = mass_k e^{-e^{k-u}}
            let mut acc = LogAccumulator::new();
            let mut last = f64::NEG_INFINITY;
            for k in 1..=m.k_max {
                last = counterexample::log_mass(k) - ((k as f64) - u).exp();
                acc.add(last);
                if (k as f64) > u.max(1.0).ln() + 1.0 && last < acc.value() - 60.0 {
                    return Ok((acc.value() - u).exp());
                }
            }
            Err(Error::Domain(format!(
                "ζ-curve at u = {u} needs plateaus beyond k_max = {} (last term {last})",
                m.k_max
            )))
        }
    }
}

pub fn zeta_curve(model: &SpectralModel, grid: &LogGrid) -> Result<Curve> {
    if grid.u_min < ZETA_MIN_U {
        return domain(format!("ζ-curve needs u_min >= {ZETA_MIN_U}, got {}", grid.u_min));
    }
    if model.marcinkiewicz_norm(grid.u_max).is_infinite() {
        return domain(format!("ζ-curve: model `{}` has infinite Marcinkiewicz norm", model.kind_name()));
    }
    Ok(with_model(sample(*grid, "zeta", |u| zeta_value(model, u))?, model))
}

// ---------------------------------------------------------------- heat curves

/// `(1/t) Σ_n exp(-(n/t)^q)` and the size of its Euler–Maclaurin tail.
fn harmonic_heat(q: f64, u: f64) -> (f64, f64) {
    let t = u.exp();
    let g = |x: f64| (-(x / t).powf(q)).exp();
    let n_cut = t * HEAT_CUTOFF.powf(1.0 / q);
    if n_cut <= HARMONIC_DIRECT_TERMS as f64 {
        let n_max = n_cut.floor().max(1.0) as u64;
        let sum: f64 = (1..=n_max).map(|n| g(n as f64)).sum();
        return (sum / t, 0.0);
    }
    let big_n = HARMONIC_DIRECT_TERMS as f64;
    let head: f64 = (1..HARMONIC_DIRECT_TERMS).map(|n| g(n as f64)).sum();
    // Σ_{n>=N} g(n) ≈ ∫_N^∞ g + g(N)/2 - g'(N)/12 + g'''(N)/720
    let z = big_n / t;
    let h = g(big_n);
    let a1 = -q * z.powf(q - 1.0);
    let a2 = -q * (q - 1.0) * z.powf(q - 2.0);
    let a3 = -q * (q - 1.0) * (q - 2.0) * z.powf(q - 3.0);
    let d1 = a1 * h / t;
    let d3 = (a3 + 3.0 * a1 * a2 + a1 * a1 * a1) * h / (t * t * t);
    let integral = t * quad::exp_power_tail(z, q, 1e-14);
    let correction = integral + 0.5 * h - d1 / 12.0 + d3 / 720.0;
    ((head + correction) / t, correction / t)
}

/// `(1/t) τ(exp(-(tA)^{-q}))` at `t = e^u`.
pub fn heat_value(model: &SpectralModel, q: f64, u: f64) -> Result<f64> {
    if !(q > 0.0) {
        return domain(format!("heat exponent must be positive, got {q}"));
    }
    Ok(match model {
        SpectralModel::Finite(f) | SpectralModel::Explicit(f) => {
            (f.log_sum(&|w| -(-q * (u + w)).exp()) - u).exp()
        }
        SpectralModel::Harmonic => harmonic_heat(q, u).0,
        SpectralModel::PowerTail { c, p } => {
            // y = 1 + x, z = (tc)^{-1/p} y: the integral becomes a tail of e^{-z^{pq}}
            let log_scale = (c.ln() + u) / p;
            let tail = quad::exp_power_tail((-log_scale).exp(), p * q, 1e-14);
            (log_scale - u).exp() * tail
        }
        SpectralModel::Counterexample(m) => {
            let mut acc = LogAccumulator::new();
            for k in 1..=m.k_max {
                let ek = (k as f64).exp();
                let term = counterexample::log_length(k) - (-q * (u - ek)).exp();
                acc.add(term);
                if ek > u && term < acc.value() - 60.0 {
                    break;
                }
            }
            (acc.value() - u).exp()
        }
    })
}

pub fn heat_curve(model: &SpectralModel, q: f64, grid: &LogGrid) -> Result<Curve> {
    let curve = sample(*grid, "heat", |u| heat_value(model, q, u))?;
    let mut curve = with_model(curve, model).with_param("q", q);
    if let SpectralModel::Harmonic = model {
        let worst = grid
            .points()
            .map(|u| harmonic_heat(q, u).1.abs())
            .fold(0.0, f64::max);
        curve = curve.with_param("euler_maclaurin_tail", worst);
    }
    Ok(curve)
}

/// `(1/t) τ(f(tA))` at `t = e^u`.
pub fn generalized_heat_value(model: &SpectralModel, f: &TestFunction, u: f64) -> Result<f64> {
    if !f.flags.bounded {
        return domain(format!("{} is not declared bounded", f.descriptor()));
    }
    match &f.kind {
        TestFunctionKind::HeatExp { q } => heat_value(model, *q, u),
        TestFunctionKind::SquareCut => square_cut_value(model, u),
        TestFunctionKind::TailIndicator => Ok((model.log_distribution(-u) - u).exp()),
        TestFunctionKind::PiecewiseMonotone { knots } => piecewise_value(model, f, knots[0].0, u),
    }
}

/// `e^{ln n}` can land an ulp above `n`; such values are read as `n`.
fn snap_to_integer(t: f64) -> f64 {
    let r = t.round();
    if (t - r).abs() <= 4.0 * f64::EPSILON * t {
        r
    } else {
        t
    }
}

/// `t Σ_{μ <= 1/t} μ²` (plateau-weighted).
fn square_cut_value(model: &SpectralModel, u: f64) -> Result<f64> {
    Ok(match model {
        SpectralModel::Finite(st) | SpectralModel::Explicit(st) => {
            let mut acc = LogAccumulator::new();
            for (i, p) in st.plateaus().iter().enumerate() {
                if p.w <= -u {
                    acc.add(st.log_length(i) + 2.0 * p.w);
                }
            }
            (acc.value() + u).exp()
        }
        SpectralModel::Harmonic => {
            let t = snap_to_integer(u.exp());
            t * series::inverse_square_tail(t.ceil().max(1.0) as u64)
        }
        SpectralModel::PowerTail { c, p } => {
            if *p <= 0.5 {
                return Err(Error::Divergent(format!("Σ μ² diverges for power tail p = {p}")));
            }
            // μ <= 1/t from y = 1 + x >= Y = max(1, (ct)^{1/p})
            let log_y = ((c.ln() + u) / p).max(0.0);
            (2.0 * c.ln() + (1.0 - 2.0 * p) * log_y - (2.0 * p - 1.0).ln() + u).exp()
        }
        SpectralModel::Counterexample(m) => {
            let mut acc = LogAccumulator::new();
            for k in 1..=m.k_max {
                let ek = (k as f64).exp();
                if ek >= u {
                    let term = counterexample::log_length(k) - 2.0 * ek;
                    acc.add(term);
                    if term < acc.value() - 60.0 {
                        break;
                    }
                }
            }
            (acc.value() + u).exp()
        }
    })
}

fn piecewise_value(model: &SpectralModel, f: &TestFunction, s0: f64, u: f64) -> Result<f64> {
    let t = u.exp();
    let plateau_term = |log_len: f64, w: f64| {
        let v = f.eval((u + w).exp());
        if v == 0.0 {
            0.0
        } else {
            v.signum() * (log_len - u + v.abs().ln()).exp()
        }
    };
    match model {
        SpectralModel::Finite(st) | SpectralModel::Explicit(st) => Ok(st
            .plateaus()
            .iter()
            .enumerate()
            .map(|(i, p)| plateau_term(st.log_length(i), p.w))
            .sum()),
        SpectralModel::Counterexample(m) => Ok((1..=m.k_max)
            .map(|k| plateau_term(counterexample::log_length(k), counterexample::log_value(k)))
            .sum()),
        SpectralModel::Harmonic => {
            if s0 <= 0.0 {
                return domain("harmonic sums need a test function vanishing below a positive knot");
            }
            let n_max = (t / s0).floor();
            if n_max > MAX_DIRECT_TERMS as f64 {
                return Err(Error::NotConverged(format!("harmonic sum needs {n_max} terms")));
            }
            let sum: f64 = (1..=n_max as u64).map(|n| f.eval(t / n as f64)).sum();
            Ok(sum / t)
        }
        SpectralModel::PowerTail { c, p } => {
            if s0 <= 0.0 {
                return domain("power-tail integrals need a test function vanishing below a positive knot");
            }
            // y = ln(1+x): tμ = tc e^{-py}, and f vanishes once tμ < s0
            let y_max = ((c * t).ln() - s0.ln()) / p;
            if y_max <= 0.0 {
                return Ok(0.0);
            }
            let breaks: Vec<f64> = f
                .breakpoints()
                .iter()
                .filter(|&&s| s > 0.0)
                .map(|&s| ((c * t).ln() - s.ln()) / p)
                .collect();
            let integrand = |y: f64| f.eval(c * t * (-p * y).exp()) * y.exp();
            Ok(quad::integrate_with_breaks(integrand, 0.0, y_max, &breaks, 1e-12 * t) / t)
        }
    }
}

pub fn generalized_heat_curve(model: &SpectralModel, f: &TestFunction, grid: &LogGrid) -> Result<Curve> {
    if !f.flags.bounded {
        return domain(format!("{} is not declared bounded", f.descriptor()));
    }
    let curve = sample(*grid, "gheat", |u| generalized_heat_value(model, f, u))?;
    Ok(with_model(curve, model).with_param("f", f.descriptor()))
}

// ---------------------------------------------------------------- Cesàro mean

/// Running mean `(1/u) ∫_0^u x(e^v) dv` by the trapezoid rule.
///
/// A curve starting at `u_min > 0` is extended to the left by its first
/// value. The output keeps the grid points with `u >= max(u_min, 0.5)`.
pub fn cesaro(curve: &Curve) -> Result<Curve> {
    let grid = curve.grid;
    if grid.u_min < 0.0 {
        return domain(format!("Cesàro mean needs u_min >= 0, got {}", grid.u_min));
    }
    let start = grid.u_min.max(0.5);
    let first = (0..grid.count)
        .find(|&i| grid.u(i) >= start)
        .unwrap_or(grid.count);
    if grid.count - first < 2 {
        return domain("Cesàro mean: fewer than two grid points at u >= 0.5");
    }
    let mut integral = grid.u_min * curve.values[0];
    let mut out = Vec::with_capacity(grid.count - first);
    for i in 0..grid.count {
        if i > 0 {
            let du = grid.u(i) - grid.u(i - 1);
            integral += 0.5 * du * (curve.values[i] + curve.values[i - 1]);
        }
        if i >= first {
            out.push(integral / grid.u(i));
        }
    }
    let out_grid = LogGrid::new(grid.u(first), grid.u_max, grid.count - first)?;
    let mut result = Curve::new(out_grid, out, format!("cesaro({})", curve.functional_name))?;
    result.params = curve.params.clone();
    Ok(result
        .with_param("left_extension", grid.u_min)
        .with_param("coarse_grid_warning", grid.spacing() > CESARO_COARSE_SPACING))
}

// ---------------------------------------------------------------- Dixmier, tail, Lidskii

/// `∫_0^t μ / log(1+t)` at `t = e^u`.
pub fn dixmier_value(model: &SpectralModel, u: f64) -> f64 {
    match model {
        SpectralModel::Counterexample(m) => (m.log_partial_integral(u) - softplus(u).ln()).exp(),
        _ => model.partial_integral_log(u) / softplus(u),
    }
}

pub fn dixmier_curve(model: &SpectralModel, grid: &LogGrid) -> Result<Curve> {
    require_dixmier(model, "Dixmier curve")?;
    Ok(with_model(sample(*grid, "dixmier", |u| Ok(dixmier_value(model, u)))?, model))
}

/// `τ((A - 1/t)_+) / log(1+t)` at `t = e^u`.
pub fn tail_value(model: &SpectralModel, u: f64) -> f64 {
    model.tail_trace_log(u) / softplus(u)
}

pub fn tail_curve(model: &SpectralModel, grid: &LogGrid) -> Result<Curve> {
    require_dixmier(model, "tail curve")?;
    Ok(with_model(sample(*grid, "tail", |u| Ok(tail_value(model, u)))?, model))
}

/// `(1/u) Σ_{λ > u e^{-u}} λ` over the eigenvalues of a discrete model.
///
/// Eigenvalues are accumulated from the largest down, one at a time, in the
/// same order as a direct filter over the spectrum.
pub fn lidskii_value(model: &SpectralModel, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return domain(format!("Lidskii curve needs u > 0, got {u}"));
    }
    let threshold = u * (-u).exp();
    match model {
        SpectralModel::Harmonic => {
            let mut sum = 0.0;
            let mut n = 1u64;
            while 1.0 / n as f64 > threshold {
                if n > MAX_DIRECT_TERMS {
                    let m = (1.0 / threshold).ceil() as u64 - 1;
                    return Ok(series::harmonic_number(m) / u);
                }
                sum += 1.0 / n as f64;
                n += 1;
            }
            Ok(sum / u)
        }
        SpectralModel::Finite(st) => {
            let mut sum = 0.0;
            let mut prev = 0u64;
            for p in st.plateaus() {
                let end = p.u_right.exp().round() as u64;
                let v = p.w.exp();
                if v > threshold {
                    for _ in prev..end {
                        sum += v;
                    }
                }
                prev = end;
            }
            Ok(sum / u)
        }
        other => Err(Error::UnsupportedKind {
            op: "lidskii_curve",
            kind: other.kind_name(),
        }),
    }
}

pub fn lidskii_curve(model: &SpectralModel, grid: &LogGrid) -> Result<Curve> {
    if !model.is_discrete() {
        return Err(Error::UnsupportedKind {
            op: "lidskii_curve",
            kind: model.kind_name(),
        });
    }
    Ok(with_model(sample(*grid, "lidskii", |u| lidskii_value(model, u))?, model))
}

// ---------------------------------------------------------------- weight integral

/// `∫_0^∞ f(s) s^{-2} ds`.
///
/// The part over `[1, ∞)` becomes `∫_0^1 f(1/y) dy`. The part over `(0, 1]`
/// is accumulated over the decades `[10^{-2j}, 10^{-2j+2}]`; the last piece
/// must be below `1e-10`, otherwise the integral is reported divergent.
pub fn weight_integral(f: &TestFunction) -> Result<f64> {
    const TOL: f64 = 1e-14;
    const DECADES: i32 = 7;
    let breaks = f.breakpoints();
    let near: Vec<f64> = breaks.iter().copied().filter(|&s| s > 0.0 && s < 1.0).collect();
    let far: Vec<f64> = breaks.iter().filter(|&&s| s > 1.0).map(|&s| 1.0 / s).collect();
    let g = |s: f64| f.eval(s) / (s * s);
    let mut total = 0.0;
    let mut last_piece = 0.0;
    for j in 1..=DECADES {
        let lo = 10f64.powi(-2 * j);
        let hi = 10f64.powi(-2 * j + 2);
        last_piece = quad::integrate_with_breaks(g, lo, hi, &near, TOL);
        total += last_piece;
    }
    if last_piece.abs() > 1e-10 {
        return Err(Error::Divergent(format!(
            "∫ f(s)/s² near 0 does not settle (last piece {last_piece:e})"
        )));
    }
    // remainder on (0, 1e-14], exact when f(s)/s² is constant there
    let lo = 10f64.powi(-2 * DECADES);
    total += lo * g(lo);
    total += quad::integrate_with_breaks(|y: f64| if y > 0.0 { f.eval(1.0 / y) } else { 0.0 }, 0.0, 1.0, &far, TOL);
    Ok(total)
}

/// `Γ(1 + 1/q)`.
pub fn gamma_factor(q: f64) -> f64 {
    statrs::function::gamma::gamma(1.0 + 1.0 / q)
}

// ---------------------------------------------------------------- Karamata comparison

/// A nondecreasing `β` with `β(0) = 0`.
pub enum Beta<'a> {
    Linear { slope: f64 },
    /// `β(u) = d_A(1/u)`.
    DistributionOf(&'a SpectralModel),
    Function(&'a (dyn Fn(f64) -> f64 + Sync)),
}

impl Beta<'_> {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Beta::Linear { slope } => slope * u,
            Beta::DistributionOf(m) => {
                if u <= 0.0 {
                    0.0
                } else {
                    m.log_distribution(-u.ln()).exp()
                }
            }
            Beta::Function(f) => f(u),
        }
    }
}

/// The Laplace-type curve `h(t)/t` with `h(t) = ∫ e^{-(u/t)^q} dβ(u)`, and
/// the comparison curve `Γ(1+1/q) β(t)/t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KaramataCurves {
    pub laplace: Curve,
    pub scaled: Curve,
}

impl KaramataCurves {
    pub fn max_difference(&self) -> f64 {
        self.laplace
            .values
            .iter()
            .zip(&self.scaled.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `h(t)/t` at `t = e^u`. For continuous `β`, integration by parts and
/// `u = t z^{1/q}` give `∫_0^∞ β(t z^{1/q})/t e^{-z} dz`. For
/// `β = d_A(1/·)` the Stieltjes integral is the heat trace.
pub fn karamata_laplace_value(beta: &Beta<'_>, q: f64, u: f64) -> Result<f64> {
    match beta {
        Beta::DistributionOf(m) => heat_value(m, q, u),
        _ => {
            let t = u.exp();
            let integrand = |z: f64| beta.eval(t * z.powf(1.0 / q)) / t * (-z).exp();
            Ok(quad::integrate_with_breaks(integrand, 0.0, 80.0, &[1.0, 10.0], 1e-14))
        }
    }
}

pub fn karamata_compare(beta: &Beta<'_>, q: f64, grid: &LogGrid) -> Result<KaramataCurves> {
    if !(q > 0.0) {
        return domain(format!("q must be positive, got {q}"));
    }
    let gamma = gamma_factor(q);
    let ratio = |u: f64| beta.eval(u.exp()) / u.exp();
    if let Some(u) = grid.points().find(|&u| !(ratio(u).abs() <= KARAMATA_BOUND)) {
        return domain(format!("β(t)/t exceeds {KARAMATA_BOUND:e} at u = {u}"));
    }
    let laplace = sample(*grid, "karamata_laplace", |u| karamata_laplace_value(beta, q, u))?;
    let scaled = sample(*grid, "karamata_scaled", |u| Ok(gamma * ratio(u)))?;
    Ok(KaramataCurves {
        laplace: laplace.with_param("q", q),
        scaled: scaled.with_param("q", q).with_param("gamma_factor", gamma),
    })
}

// ---------------------------------------------------------------- window functional

/// Bounded nonnegative function given in the coordinate `v = ln s`.
pub enum PiArgument<'a> {
    Constant(f64),
    /// Indicator of a union of `v`-intervals `[a, b)`.
    Indicator(Vec<(f64, f64)>),
    Function(&'a (dyn Fn(f64) -> f64 + Sync)),
}

/// The intervals `[e^j, e^j + width(j))`, `j = 1..=j_max`, in `v = ln s`.
/// Width `j` gives the family `χ_[exp(e^j), exp(j + e^j))`; width `ln a`
/// gives `χ_[exp(e^j), a exp(e^j))`.
pub fn double_exponential_windows(j_max: u32, width: impl Fn(u32) -> f64) -> Vec<(f64, f64)> {
    (1..=j_max)
        .map(|j| {
            let a = (j as f64).exp();
            (a, a + width(j))
        })
        .collect()
}

/// `(1/log log N) ∫_N^{N log N} x(s) ds/s` at `N = exp(e^k)`, i.e. the mean
/// of `x` over `v ∈ [e^k, e^k + k]` divided by `k`.
pub fn pi_window_value(x: &PiArgument<'_>, k: u32) -> f64 {
    let kf = k as f64;
    let lo = kf.exp();
    let hi = lo + kf;
    match x {
        PiArgument::Constant(c) => *c,
        PiArgument::Indicator(intervals) => {
            let covered: f64 = intervals
                .iter()
                .map(|&(a, b)| (b.min(hi) - a.max(lo)).max(0.0))
                .sum();
            covered / kf
        }
        PiArgument::Function(f) => quad::adaptive_simpson(f, lo, hi, 1e-12) / kf,
    }
}

/// Window averages at `k` in `k_range`; the maximum is the limsup estimate.
pub fn pi_functional(x: &PiArgument<'_>, k_range: std::ops::RangeInclusive<u32>) -> Result<LimitEstimate> {
    if k_range.is_empty() || *k_range.start() == 0 {
        return domain(format!("window functional needs a nonempty range of k >= 1, got {k_range:?}"));
    }
    let probes: Vec<(f64, f64)> = k_range
        .map(|k| ((k as f64).exp(), pi_window_value(x, k)))
        .collect();
    Ok(LimitEstimate::from_probes(probes, 1e-3))
}
