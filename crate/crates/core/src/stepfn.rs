//! Singular value functions in log coordinates.
//!
//! A positive compact operator is represented by its decreasing
//! rearrangement `μ(t)`. Piecewise-constant functions are stored as plateaus
//! `(u_right, w)` with `u_right = ln` of the right endpoint and `w = ln` of the
//! value, so abscissae like `e^{k+e^k}` and values like `e^{-e^k}` are both
//! representable. `μ` is right-continuous and the distribution function
//! counts the strict level set `{μ > s}`.

use serde::{Deserialize, Serialize};

use crate::counterexample::{self, CounterexampleModel};
use crate::error::{domain, Error, Result};
use crate::grid::LogGrid;
use crate::logspace::{log_diff_exp, softplus, LogAccumulator};
use crate::quad;
use crate::series;

/// Harmonic boundaries beyond this many points are not enumerated.
const MAX_ENUMERATED_BOUNDARIES: u64 = 1_000_000;

/// Relative tolerance of majorization and tail-dominance checks.
pub const MAJORIZATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plateau {
    /// `ln` of the right endpoint.
    pub u_right: f64,
    /// `ln` of the plateau value.
    pub w: f64,
}

/// Nonincreasing, finitely supported step function.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StepFunction {
    plateaus: Vec<Plateau>,
}

impl StepFunction {
    /// Builds a step function from `(u_right, w)` pairs. Adjacent plateaus with
    /// equal values are merged; increasing values or non-increasing
    /// abscissae are rejected with the offending index.
    pub fn new(pairs: &[(f64, f64)]) -> Result<Self> {
        let mut plateaus: Vec<Plateau> = Vec::with_capacity(pairs.len());
        for (i, &(u_right, w)) in pairs.iter().enumerate() {
            if !u_right.is_finite() || !w.is_finite() {
                return Err(Error::Schema(format!("plateau {i}: non-finite entry ({u_right}, {w})")));
            }
            if let Some(last) = plateaus.last_mut() {
                if u_right <= last.u_right {
                    return Err(Error::Schema(format!(
                        "plateau {i}: right endpoint {u_right} does not increase (previous {})",
                        last.u_right
                    )));
                }
                if w > last.w {
                    return Err(Error::Schema(format!(
                        "plateau {i}: value {w} increases (previous {})",
                        last.w
                    )));
                }
                if w == last.w {
                    last.u_right = u_right;
                    continue;
                }
            }
            plateaus.push(Plateau { u_right, w });
        }
        Ok(Self { plateaus })
    }

    pub fn plateaus(&self) -> &[Plateau] {
        &self.plateaus
    }

    pub fn is_empty(&self) -> bool {
        self.plateaus.is_empty()
    }

    /// `ln` of the left endpoint of plateau `i` (`-inf` for the first).
    fn left(&self, i: usize) -> f64 {
        if i == 0 {
            f64::NEG_INFINITY
        } else {
            self.plateaus[i - 1].u_right
        }
    }

    /// `ln` of the length of plateau `i`.
    pub fn log_length(&self, i: usize) -> f64 {
        log_diff_exp(self.plateaus[i].u_right, self.left(i))
    }

    /// `ln` of the support length.
    pub fn log_support(&self) -> f64 {
        self.plateaus.last().map_or(f64::NEG_INFINITY, |p| p.u_right)
    }

    pub fn log_mu(&self, u: f64) -> f64 {
        self.plateaus
            .iter()
            .find(|p| p.u_right > u)
            .map_or(f64::NEG_INFINITY, |p| p.w)
    }

    pub fn log_partial_integral(&self, u: f64) -> f64 {
        let mut acc = LogAccumulator::new();
        let mut left = f64::NEG_INFINITY;
        for p in &self.plateaus {
            if u >= p.u_right {
                acc.add(p.w + log_diff_exp(p.u_right, left));
                left = p.u_right;
            } else {
                if u > left {
                    acc.add(p.w + log_diff_exp(u, left));
                }
                break;
            }
        }
        acc.value()
    }

    /// `ln d(e^{log_level})`, the log-measure of `{μ > e^{log_level}}`.
    pub fn log_distribution(&self, log_level: f64) -> f64 {
        self.plateaus
            .iter()
            .rev()
            .find(|p| p.w > log_level)
            .map_or(f64::NEG_INFINITY, |p| p.u_right)
    }

    /// `∫ (μ - e^{-u})_+`; every plateau above the level contributes a
    /// positive term `len (v - 1/t)`.
    pub fn tail_trace_at(&self, u: f64) -> f64 {
        let level = -u;
        let mut acc = LogAccumulator::new();
        for (i, p) in self.plateaus.iter().enumerate() {
            if p.w <= level {
                break;
            }
            acc.add(self.log_length(i) + log_diff_exp(p.w, level));
        }
        acc.value().exp()
    }

    /// `ln Σ len_i g(v_i)` for a log-domain integrand `log_g(w)`.
    pub fn log_sum(&self, log_g: &dyn Fn(f64) -> f64) -> f64 {
        let mut acc = LogAccumulator::new();
        for (i, p) in self.plateaus.iter().enumerate() {
            acc.add(self.log_length(i) + log_g(p.w));
        }
        acc.value()
    }

    pub fn boundaries_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.plateaus
            .iter()
            .map(|p| p.u_right)
            .filter(|&u| u >= lo && u <= hi)
            .collect()
    }

    pub fn dilate(&self, s: f64) -> Result<Self> {
        dilate(self, s)
    }
}

/// Decreasing rearrangement of a finite nonnegative sequence as a unit-width
/// step function. Zeros are dropped and equal values share a plateau.
pub fn rearrange(values: &[f64]) -> Result<StepFunction> {
    if values.is_empty() {
        return domain("cannot rearrange an empty list");
    }
    if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
        return domain(format!("value {v} at index {i} is negative or not finite"));
    }
    let mut sorted: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        pairs.push(((j as f64).ln(), v.ln()));
        i = j;
    }
    StepFunction::new(&pairs)
}

/// `(σ_s f)(t) = f(t/s)`: every abscissa shifts by `ln s`.
pub fn dilate(f: &StepFunction, s: f64) -> Result<StepFunction> {
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("dilation factor must be positive, got {s}"));
    }
    let shift = s.ln();
    Ok(StepFunction {
        plateaus: f
            .plateaus
            .iter()
            .map(|p| Plateau {
                u_right: p.u_right + shift,
                w: p.w,
            })
            .collect(),
    })
}

/// A positive compact operator given through its singular value function.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralModel {
    /// Unit-width steps built from a finite spectrum.
    Finite(StepFunction),
    /// A user-supplied finitely supported step function.
    Explicit(StepFunction),
    /// `μ(s) = c (1+s)^{-p}`.
    PowerTail { c: f64, p: f64 },
    /// `μ_n = 1/n`, i.e. `μ(s) = 1/(⌊s⌋+1)`.
    Harmonic,
    Counterexample(CounterexampleModel),
}

impl SpectralModel {
    pub fn finite(values: &[f64]) -> Result<Self> {
        Ok(Self::Finite(rearrange(values)?))
    }

    pub fn power_tail(c: f64, p: f64) -> Result<Self> {
        if !(c > 0.0 && p > 0.0 && c.is_finite() && p.is_finite()) {
            return domain(format!("power tail needs c > 0 and p > 0, got c = {c}, p = {p}"));
        }
        Ok(Self::PowerTail { c, p })
    }

    pub fn counterexample() -> Self {
        Self::Counterexample(CounterexampleModel::default())
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Finite(_) => "finite",
            Self::Explicit(_) => "explicit",
            Self::PowerTail { .. } => "power",
            Self::Harmonic => "harmonic",
            Self::Counterexample(_) => "counterexample",
        }
    }

    pub fn step_function(&self) -> Option<&StepFunction> {
        match self {
            Self::Finite(f) | Self::Explicit(f) => Some(f),
            _ => None,
        }
    }

    /// Discrete spectrum with integer multiplicities.
    pub fn is_discrete(&self) -> bool {
        matches!(self, Self::Finite(_) | Self::Harmonic)
    }

    pub fn has_finite_support(&self) -> bool {
        self.step_function().is_some()
    }

    /// `sup_t ∫_0^t μ / log(1+t) < ∞`.
    pub fn in_dixmier_ideal(&self) -> bool {
        match self {
            Self::PowerTail { p, .. } => *p >= 1.0,
            _ => true,
        }
    }

    /// `ln μ(e^u)`.
    pub fn log_mu(&self, u: f64) -> f64 {
        match self {
            Self::Finite(f) | Self::Explicit(f) => f.log_mu(u),
            Self::PowerTail { c, p } => c.ln() - p * softplus(u),
            Self::Harmonic => {
                if u > 36.0 {
                    -u
                } else {
                    -(u.exp().floor() + 1.0).ln()
                }
            }
            Self::Counterexample(m) => m.log_mu(u),
        }
    }

    /// `μ(t)` for `t >= 0`.
    pub fn mu_at(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return domain(format!("μ(t) needs t >= 0, got {t}"));
        }
        Ok(match self {
            Self::PowerTail { c, p } => c * (1.0 + t).powf(-p),
            Self::Harmonic => 1.0 / (t.floor() + 1.0),
            _ => self.log_mu(t.ln()).exp(),
        })
    }

    /// `ln d(e^{log_level})`.
    pub fn log_distribution(&self, log_level: f64) -> f64 {
        match self {
            Self::Finite(f) | Self::Explicit(f) => f.log_distribution(log_level),
            Self::PowerTail { c, p } => {
                // c(1+x)^{-p} > s  ⟺  x < (c/s)^{1/p} - 1
                let l = (c.ln() - log_level) / p;
                if l <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    log_diff_exp(l, 0.0)
                }
            }
            Self::Harmonic => {
                let n = harmonic_count_above(log_level);
                if n == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    n.ln()
                }
            }
            Self::Counterexample(m) => m.log_distribution(log_level),
        }
    }

    /// `d(s) = |{μ > s}|`, for `s > 0`.
    pub fn distribution(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return domain(format!("distribution needs s > 0, got {s}"));
        }
        if let Self::Harmonic = self {
            return Ok(harmonic_count_above(s.ln()));
        }
        Ok(self.log_distribution(s.ln()).exp())
    }

    /// `∫_0^{e^u} μ(s) ds`.
    pub fn partial_integral_log(&self, u: f64) -> f64 {
        match self {
            Self::Finite(f) | Self::Explicit(f) => f.log_partial_integral(u).exp(),
            Self::PowerTail { c, p } => {
                let l = softplus(u);
                if *p == 1.0 {
                    c * l
                } else {
                    c * ((1.0 - p) * l).exp_m1() / (1.0 - p)
                }
            }
            Self::Harmonic => series::harmonic_partial_integral(u),
            Self::Counterexample(m) => m.cx_partial_integral(u),
        }
    }

    /// `∫_0^t μ(s) ds`, `t > 0`.
    pub fn partial_integral(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return domain(format!("partial integral needs t > 0, got {t}"));
        }
        Ok(self.partial_integral_log(t.ln()))
    }

    /// `∫_0^{d(1/t)} (μ(s) - 1/t) ds` with `t = e^u`; `u = +inf` gives the
    /// total trace.
    pub fn tail_trace_log(&self, u: f64) -> f64 {
        match self {
            Self::Finite(f) | Self::Explicit(f) => f.tail_trace_at(u),
            Self::PowerTail { c, p } => {
                // level set [0, D) with 1 + D = (ct)^{1/p}
                let l = (c.ln() + u) / p;
                if l <= 0.0 {
                    return 0.0;
                }
                if *p == 1.0 {
                    c * (l - 1.0) + (-u).exp()
                } else {
                    c * ((1.0 - p) * l).exp_m1() / (1.0 - p) - (l - u).exp() + (-u).exp()
                }
            }
            Self::Harmonic => {
                if u > 36.0 {
                    return u + series::EULER_GAMMA - 1.0;
                }
                let m = harmonic_count_above(-u);
                series::harmonic_number(m as u64) - m * (-u).exp()
            }
            Self::Counterexample(m) => m.cx_tail_trace(u),
        }
    }

    pub fn tail_trace(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return domain(format!("tail trace needs t > 0, got {t}"));
        }
        Ok(self.tail_trace_log(t.ln()))
    }

    /// Plateau boundaries (in `u`) inside `[lo, hi]`.
    pub fn boundaries_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            Self::Finite(f) | Self::Explicit(f) => f.boundaries_in(lo, hi),
            Self::PowerTail { .. } => Vec::new(),
            Self::Harmonic => {
                // past u = 40 neighbouring ln n are closer than one ulp
                let hi = hi.min(40.0);
                if lo > hi {
                    return Vec::new();
                }
                let first = if lo <= 0.0 { 1.0 } else { lo.exp().ceil() };
                let last = hi.exp().floor().min(first + MAX_ENUMERATED_BOUNDARIES as f64);
                let mut out = Vec::new();
                let mut n = first;
                while n <= last {
                    let u = n.ln();
                    if u >= lo && u <= hi {
                        out.push(u);
                    }
                    n += 1.0;
                }
                out
            }
            Self::Counterexample(m) => m.boundaries_in(lo, hi),
        }
    }

    /// Levels (as `u = -ln v`) at which the tail trace changes slope.
    pub fn level_points_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            Self::Finite(f) | Self::Explicit(f) => f
                .plateaus()
                .iter()
                .map(|p| -p.w)
                .filter(|&u| u >= lo && u <= hi)
                .collect(),
            Self::PowerTail { .. } => Vec::new(),
            // values 1/n sit at u = ln n
            Self::Harmonic => Self::Harmonic.boundaries_in(lo, hi),
            Self::Counterexample(m) => m.level_jumps_in(lo, hi),
        }
    }

    /// `‖A‖_{1,∞} = sup_t ∫_0^t μ / log(1+t)` over `ln t <= u_max`.
    ///
    /// On a plateau the ratio is quasi-convex in `t`, so the supremum is
    /// attained at a plateau boundary, at `u_max`, or in the limit `t → 0`
    /// (where it equals `μ(0)`).
    pub fn marcinkiewicz_norm(&self, u_max: f64) -> f64 {
        let ratio = |u: f64| self.partial_integral_log(u) / softplus(u);
        let at_zero = self.log_mu(f64::NEG_INFINITY).exp();
        match self {
            Self::PowerTail { c, p } => {
                if *p >= 1.0 {
                    *c
                } else {
                    f64::INFINITY
                }
            }
            Self::Harmonic => {
                // boundaries t = n; the ratio H_n / ln(1+n) is decreasing for n >= 1
                let n_max = if u_max > 12.0 { 1.0e5 } else { u_max.exp().floor().min(1.0e5) };
                let mut best = at_zero.max(ratio(u_max));
                let mut n = 1.0;
                while n <= n_max {
                    best = best.max(ratio(f64::ln(n)));
                    n += 1.0;
                }
                best
            }
            _ => {
                let mut best = at_zero.max(ratio(u_max));
                for b in self.boundaries_in(f64::NEG_INFINITY, u_max) {
                    best = best.max(ratio(b));
                }
                best
            }
        }
    }

    /// `τ(g(A)) = ∫_0^∞ g(μ(s)) ds` for `g` given in log form,
    /// `log_g(w) = ln g(e^w)`, with `g(0) = 0`.
    ///
    /// Plateau models are summed exactly. The harmonic series is summed
    /// directly until a term falls below `1e-16` of the running sum (at
    /// most `10^8` terms). The power tail is integrated by adaptive Simpson
    /// in `y = ln(1+s)`.
    pub fn spectral_sum(&self, log_g: &dyn Fn(f64) -> f64) -> Result<f64> {
        match self {
            Self::Finite(f) | Self::Explicit(f) => Ok(f.log_sum(log_g).exp()),
            Self::Counterexample(m) => {
                let mut acc = LogAccumulator::new();
                for k in 1..=m.k_max {
                    acc.add(counterexample::log_length(k) + log_g(counterexample::log_value(k)));
                }
                Ok(acc.value().exp())
            }
            Self::Harmonic => {
                const MAX_TERMS: u64 = 100_000_000;
                let mut sum = 0.0;
                for n in 1..=MAX_TERMS {
                    let term = log_g(-(n as f64).ln()).exp();
                    sum += term;
                    if n > 16 && term <= 1e-16 * sum {
                        return Ok(sum);
                    }
                }
                Err(Error::NotConverged(format!(
                    "harmonic spectral sum did not settle within {MAX_TERMS} terms"
                )))
            }
            Self::PowerTail { c, p } => {
                let integrand = |y: f64| (log_g(c.ln() - p * y) + y).exp();
                let mut total = 0.0;
                let mut lo = 0.0;
                let mut width = 8.0;
                while lo < 700.0 {
                    let piece = quad::adaptive_simpson(integrand, lo, lo + width, 1e-13);
                    total += piece;
                    if piece.abs() <= 1e-14 * total.abs() && lo > 0.0 {
                        return Ok(total);
                    }
                    lo += width;
                    width *= 2.0;
                }
                Err(Error::NotConverged("power-tail spectral integral does not decay".into()))
            }
        }
    }
}

/// `#{n >= 1 : 1/n > e^{log_level}}`.
fn harmonic_count_above(log_level: f64) -> f64 {
    let s = log_level.exp();
    if s >= 1.0 {
        return 0.0;
    }
    let inv = (-log_level).exp();
    if inv > 2f64.powi(52) {
        return inv.ceil() - 1.0;
    }
    let mut n = inv.ceil() - 1.0;
    while n >= 1.0 && !(1.0 / n > s) {
        n -= 1.0;
    }
    while 1.0 / (n + 1.0) > s {
        n += 1.0;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// `ln t`.
    pub u: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of checking `lhs(t) <= rhs(t)` at a list of checkpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationReport {
    pub checkpoints: Vec<Checkpoint>,
    pub verdict: bool,
    /// `min (rhs - lhs)` over the checkpoints.
    pub worst_margin: f64,
    /// Absolute tolerance: `1e-10` times the largest magnitude seen.
    pub tolerance: f64,
}

impl MajorizationReport {
    fn from_checkpoints(checkpoints: Vec<Checkpoint>) -> Self {
        let worst_margin = checkpoints
            .iter()
            .map(|c| c.rhs - c.lhs)
            .fold(f64::INFINITY, f64::min);
        let scale = checkpoints
            .iter()
            .map(|c| c.lhs.abs().max(c.rhs.abs()))
            .fold(f64::MIN_POSITIVE, f64::max);
        let tolerance = MAJORIZATION_TOL * scale;
        Self {
            verdict: worst_margin >= -tolerance,
            checkpoints,
            worst_margin,
            tolerance,
        }
    }
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// `B ≺≺ A`: `∫_0^t μ(B) <= ∫_0^t μ(A)` at every grid point and every plateau
/// boundary of either operand. Both partial integrals are piecewise linear
/// between boundaries, so the check is exact on the covered range.
pub fn majorizes(a: &SpectralModel, b: &SpectralModel, grid: &LogGrid) -> MajorizationReport {
    let range = |m: &SpectralModel| {
        if m.has_finite_support() {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else {
            (grid.u_min, grid.u_max)
        }
    };
    let (alo, ahi) = range(a);
    let (blo, bhi) = range(b);
    let mut us = grid.to_vec();
    us.extend(a.boundaries_in(alo, ahi));
    us.extend(b.boundaries_in(blo, bhi));
    let checkpoints = sorted_unique(us)
        .into_iter()
        .map(|u| Checkpoint {
            u,
            t: u.exp(),
            lhs: b.partial_integral_log(u),
            rhs: a.partial_integral_log(u),
        })
        .collect();
    MajorizationReport::from_checkpoints(checkpoints)
}

/// `τ((B - 1/t)_+) <= τ((A - 1/t)_+)` at every grid point, at every level
/// equal to a plateau value of either operand, and at `t = ∞` (total trace)
/// when both have finite support.
pub fn tail_dominance(a: &SpectralModel, b: &SpectralModel, grid: &LogGrid) -> MajorizationReport {
    let finite = a.has_finite_support() && b.has_finite_support();
    let (lo, hi) = if finite {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        (grid.u_min, grid.u_max)
    };
    let mut us = grid.to_vec();
    us.extend(a.level_points_in(lo, hi));
    us.extend(b.level_points_in(lo, hi));
    if finite {
        us.push(f64::INFINITY);
    }
    let checkpoints = sorted_unique(us)
        .into_iter()
        .map(|u| Checkpoint {
            u,
            t: u.exp(),
            lhs: b.tail_trace_log(u),
            rhs: a.tail_trace_log(u),
        })
        .collect();
    MajorizationReport::from_checkpoints(checkpoints)
}

/// Returns `(B ≺≺ A, tail traces of B dominated by those of A)`. The two
/// verdicts are equivalent.
pub fn tail_equivalence_check(a: &SpectralModel, b: &SpectralModel, grid: &LogGrid) -> (bool, bool) {
    (majorizes(a, b, grid).verdict, tail_dominance(a, b, grid).verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn rearrange_sorts_and_merges() {
        let f = rearrange(&[0.2, 1.0, 0.5]).unwrap();
        let p = f.plateaus();
        assert_eq!(p.len(), 3);
        assert_eq!(p[0], Plateau { u_right: 0.0, w: 0.0 });
        assert_eq!(p[1], Plateau { u_right: 2f64.ln(), w: 0.5f64.ln() });
        assert_eq!(p[2], Plateau { u_right: 3f64.ln(), w: 0.2f64.ln() });
        assert_eq!(rearrange(&[3.0, 2.0, 1.0]).unwrap(), rearrange(&[1.0, 3.0, 2.0]).unwrap());
        let merged = rearrange(&[1.0, 0.5, 0.5, 0.0]).unwrap();
        assert_eq!(merged.plateaus().len(), 2);
        assert_eq!(merged.plateaus()[1].u_right, 3f64.ln());
    }

    #[test]
    fn rearrange_rejects_bad_input() {
        assert!(rearrange(&[]).is_err());
        assert!(rearrange(&[1.0, -0.1]).is_err());
        assert!(rearrange(&[f64::NAN]).is_err());
        assert!(rearrange(&[0.0, 0.0]).unwrap().is_empty());
    }

    #[test]
    fn step_function_validation_names_index() {
        let err = StepFunction::new(&[(0.0, 0.0), (-1.0, 1.0)]).unwrap_err();
        assert!(err.to_string().contains("plateau 1"), "{err}");
        let err = StepFunction::new(&[(0.0, 0.0), (1.0, 1.0)]).unwrap_err();
        assert!(err.to_string().contains("increases"), "{err}");
    }

    #[test]
    fn mu_at_examples() {
        let p = SpectralModel::power_tail(1.0, 1.0).unwrap();
        assert!(close(p.mu_at(9.0).unwrap(), 0.1, 1e-15));
        assert!(close(SpectralModel::Harmonic.mu_at(2.5).unwrap(), 1.0 / 3.0, 1e-15));
        let t = (2.0 + E * E).exp() - 1.0;
        let cx = SpectralModel::counterexample();
        assert!(close(cx.mu_at(t).unwrap(), (-E * E).exp(), 1e-13));
        // right-continuity at a plateau boundary
        let f = SpectralModel::finite(&[2.0, 1.0]).unwrap();
        assert_eq!(f.mu_at(1.0).unwrap(), 1.0);
        assert_eq!(f.mu_at(0.999).unwrap(), 2.0);
        assert_eq!(f.mu_at(2.0).unwrap(), 0.0);
        assert!(f.mu_at(-1.0).is_err());
    }

    #[test]
    fn distribution_examples() {
        let p = SpectralModel::power_tail(1.0, 1.0).unwrap();
        assert!(close(p.distribution(0.1).unwrap(), 9.0, 1e-12));
        assert_eq!(SpectralModel::Harmonic.distribution(0.5).unwrap(), 1.0);
        assert_eq!(SpectralModel::Harmonic.distribution(0.3).unwrap(), 3.0);
        let f = SpectralModel::finite(&[1.0, 0.5, 0.2]).unwrap();
        assert_eq!(f.distribution(2.0).unwrap(), 0.0);
        assert!(close(f.distribution(0.5).unwrap(), 1.0, 1e-15));
        assert!(close(f.distribution(0.1).unwrap(), 3.0, 1e-15));
        assert!(f.distribution(0.0).is_err());
        assert_eq!(p.distribution(1.5).unwrap(), 0.0);
    }

    #[test]
    fn partial_integral_examples() {
        let p = SpectralModel::power_tail(1.0, 1.0).unwrap();
        for &t in &[0.3, 1.0, 50.0, 1e10] {
            assert!(close(p.partial_integral(t).unwrap(), f64::ln_1p(t), 1e-14));
        }
        let h = SpectralModel::Harmonic;
        assert!(close(h.partial_integral(3.0).unwrap(), 11.0 / 6.0, 1e-14));
        let f = SpectralModel::finite(&[2.0, 1.0]).unwrap();
        assert!(close(f.partial_integral(1.5).unwrap(), 2.5, 1e-15));
        assert!(close(f.partial_integral(10.0).unwrap(), 3.0, 1e-15));
    }

    #[test]
    fn partial_integral_survives_huge_abscissae() {
        let f = StepFunction::new(&[(650.0, -640.0), (700.0, -690.0)]).unwrap();
        // first plateau mass e^{10}, second e^{-690}(e^{700} - e^{650}) ≈ e^{10}
        let v = f.log_partial_integral(700.0);
        let expected = crate::logspace::log_sum_exp(&[10.0, -690.0 + log_diff_exp(700.0, 650.0)]);
        assert!((v - expected).abs() < 1e-12);
        assert!(v.is_finite());
    }

    #[test]
    fn marcinkiewicz_norm_examples() {
        let p = SpectralModel::power_tail(1.0, 1.0).unwrap();
        assert_eq!(p.marcinkiewicz_norm(20.0), 1.0);
        let f = SpectralModel::finite(&[1.0, 0.5, 0.2]).unwrap();
        assert!(close(f.marcinkiewicz_norm(10.0), 1.0 / LN_2, 1e-14));
        assert!(close(SpectralModel::Harmonic.marcinkiewicz_norm(10.0), 1.0 / LN_2, 1e-14));
        assert_eq!(SpectralModel::power_tail(1.0, 0.5).unwrap().marcinkiewicz_norm(10.0), f64::INFINITY);
    }

    #[test]
    fn marcinkiewicz_norm_of_finite_matches_dense_grid() {
        // dense-grid maximisation oracle
        let f = SpectralModel::finite(&[1.0, 0.5, 0.2]).unwrap();
        let mut best: f64 = 0.0;
        for i in 1..200_000 {
            let t = i as f64 * 1e-4;
            let v = f.partial_integral(t).unwrap() / t.ln_1p();
            best = best.max(v);
        }
        assert!((best - f.marcinkiewicz_norm(5.0)).abs() < 1e-6);
        assert!(best <= f.marcinkiewicz_norm(5.0) + 1e-15);
    }

    #[test]
    fn dilate_examples() {
        let f = rearrange(&[1.0]).unwrap();
        assert_eq!(dilate(&f, 1.0).unwrap(), f);
        let g = dilate(&f, 2.0).unwrap();
        assert_eq!(g.plateaus()[0].u_right, 2f64.ln());
        assert_eq!(g.plateaus()[0].w, 0.0);
        assert!(dilate(&f, 0.0).is_err());
    }

    #[test]
    fn tail_trace_examples() {
        let p = SpectralModel::power_tail(1.0, 1.0).unwrap();
        assert!(close(p.tail_trace(E).unwrap(), 1.0 / E, 1e-14));
        // quadrature oracle: ∫_0^{e-1} (1/(1+s) - 1/e) ds
        let oracle = quad::adaptive_simpson(|s| 1.0 / (1.0 + s) - 1.0 / E, 0.0, E - 1.0, 1e-14);
        assert!(close(p.tail_trace(E).unwrap(), oracle, 1e-12));
        assert_eq!(p.tail_trace(0.5).unwrap(), 0.0);
        let f = SpectralModel::finite(&[1.0, 0.5]).unwrap();
        assert_eq!(f.tail_trace(0.9).unwrap(), 0.0);
        assert!(close(f.tail_trace(4.0).unwrap(), 0.75 + 0.25, 1e-15));
        // t = ∞ gives the total trace
        assert!(close(f.tail_trace_log(f64::INFINITY), 1.5, 1e-15));
        let h = SpectralModel::Harmonic;
        // t = 3.5: n = 1,2,3 → H_3 - 3/3.5
        assert!(close(h.tail_trace(3.5).unwrap(), 11.0 / 6.0 - 3.0 / 3.5, 1e-14));
    }

    #[test]
    fn majorization_examples() {
        let grid = LogGrid::new(-3.0, 3.0, 61).unwrap();
        let a = SpectralModel::finite(&[2.0, 1.0]).unwrap();
        let b = SpectralModel::finite(&[1.5, 1.5]).unwrap();
        let r = majorizes(&a, &b, &grid);
        assert!(r.verdict);
        assert!(r.checkpoints.iter().any(|c| (c.t - 1.0).abs() < 1e-12 && close(c.lhs, 1.5, 1e-14) && close(c.rhs, 2.0, 1e-14)));
        assert!(!majorizes(&b, &a, &grid).verdict);
        let rr = majorizes(&a, &a, &grid);
        assert!(rr.verdict);
        assert_eq!(rr.worst_margin, 0.0);
        assert_eq!(tail_equivalence_check(&a, &b, &grid), (true, true));
        assert_eq!(tail_equivalence_check(&a, &a, &grid), (true, true));
        assert_eq!(tail_equivalence_check(&b, &a, &grid), (false, false));
    }

    #[test]
    fn norm_one_models_are_majorized_by_inverse_linear() {
        let grid = LogGrid::new(-5.0, 12.0, 400).unwrap();
        let reference = SpectralModel::power_tail(1.0, 1.0).unwrap();
        let scale = 1.0 / SpectralModel::Harmonic.marcinkiewicz_norm(12.0);
        let models = [
            SpectralModel::finite(&[0.5, 0.3, 0.3, 0.1]).unwrap(),
            SpectralModel::power_tail(0.9, 1.5).unwrap(),
            SpectralModel::finite(&[scale, scale / 2.0, scale / 3.0]).unwrap(),
        ];
        for m in &models {
            assert!(m.marcinkiewicz_norm(12.0) <= 1.0);
            assert!(majorizes(&reference, m, &grid).verdict, "{m:?}");
        }
    }

    #[test]
    fn spectral_sum_agrees_with_closed_forms() {
        // g(v) = v: total trace of a finite model, and ∫ μ² for the power tail
        let f = SpectralModel::finite(&[1.0, 0.5, 0.25]).unwrap();
        assert!(close(f.spectral_sum(&|w| w).unwrap(), 1.75, 1e-15));
        let p = SpectralModel::power_tail(2.0, 1.0).unwrap();
        // ∫_0^∞ 4/(1+s)^2 ds = 4
        assert!(close(p.spectral_sum(&|w| 2.0 * w).unwrap(), 4.0, 1e-10));
        let h = SpectralModel::Harmonic;
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        // Σ 1/n^4 settles quickly; Σ 1/n^2 would need 10^8 terms
        let z4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!(close(h.spectral_sum(&|w| 4.0 * w).unwrap(), z4, 1e-12));
        assert!(z2 > 0.0);
    }
}
