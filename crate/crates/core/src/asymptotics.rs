//! Limit-point estimates of curves along windows and subsequences, and the
//! gap between the Dixmier and heat-kernel functionals of the
//! counterexample.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::functionals::{self, TestFunction};
use crate::stepfn::SpectralModel;

/// Samples per window, before plateau boundaries are added.
pub const WINDOW_SAMPLES: usize = 100;

/// Spread below which a window envelope counts as converged.
pub const ENVELOPE_TOL: f64 = 1e-3;

/// Agreement required between the quadrature and library Γ values.
pub const GAMMA_CROSSCHECK_TOL: f64 = 1e-8;

/// Stand-in for the value of a generalised limit: sampled probes and the
/// spread of their tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    /// `(u, value)` pairs in evaluation order.
    pub probes: Vec<(f64, f64)>,
    pub liminf_est: f64,
    pub limsup_est: f64,
    pub converged: bool,
    pub extrapolated: Option<f64>,
    pub tolerance: f64,
}

impl LimitEstimate {
    /// Envelope over all probes.
    pub fn from_probes(probes: Vec<(f64, f64)>, tolerance: f64) -> Self {
        let liminf_est = probes.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let limsup_est = probes.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Self {
            probes,
            liminf_est,
            limsup_est,
            converged: limsup_est - liminf_est <= tolerance,
            extrapolated: None,
            tolerance,
        }
    }

    /// Best single value: the extrapolation when present, else the last probe.
    pub fn limit(&self) -> f64 {
        self.extrapolated
            .unwrap_or_else(|| self.probes.last().map_or(f64::NAN, |p| p.1))
    }
}

/// A curve that can be evaluated at any `u` and knows where it has kinks.
pub trait PointEvaluator: Sync {
    fn value(&self, u: f64) -> Result<f64>;

    fn breakpoints(&self, _lo: f64, _hi: f64) -> Vec<f64> {
        Vec::new()
    }
}

impl<F: Fn(f64) -> f64 + Sync> PointEvaluator for F {
    fn value(&self, u: f64) -> Result<f64> {
        Ok(self(u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CurveKind {
    Zeta,
    Heat { q: f64 },
    Dixmier,
    Tail,
    Lidskii,
}

/// A named functional curve of a model.
pub struct ModelCurve<'a> {
    pub model: &'a SpectralModel,
    pub kind: CurveKind,
}

impl<'a> ModelCurve<'a> {
    pub fn new(model: &'a SpectralModel, kind: CurveKind) -> Self {
        Self { model, kind }
    }
}

impl PointEvaluator for ModelCurve<'_> {
    fn value(&self, u: f64) -> Result<f64> {
        match self.kind {
            CurveKind::Zeta => functionals::zeta_value(self.model, u),
            CurveKind::Heat { q } => functionals::heat_value(self.model, q, u),
            CurveKind::Dixmier => Ok(functionals::dixmier_value(self.model, u)),
            CurveKind::Tail => Ok(functionals::tail_value(self.model, u)),
            CurveKind::Lidskii => functionals::lidskii_value(self.model, u),
        }
    }

    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts = self.model.boundaries_in(lo, hi);
        pts.extend(self.model.level_points_in(lo, hi));
        pts
    }
}

/// Per-window infimum and supremum of `eval`, sampled at
/// [`WINDOW_SAMPLES`] uniform points plus every breakpoint in the window.
/// The estimates use the last three windows.
pub fn window_envelope(eval: &dyn PointEvaluator, windows: &[(f64, f64)]) -> Result<LimitEstimate> {
    if windows.is_empty() {
        return domain("window envelope needs at least one window");
    }
    let mut probes = Vec::new();
    let mut bounds = Vec::with_capacity(windows.len());
    for &(lo, hi) in windows {
        if !(lo < hi) {
            return domain(format!("window [{lo}, {hi}] is empty"));
        }
        let mut us: Vec<f64> = (0..WINDOW_SAMPLES)
            .map(|i| lo + (hi - lo) * i as f64 / (WINDOW_SAMPLES - 1) as f64)
            .collect();
        us.extend(eval.breakpoints(lo, hi));
        us.sort_by(f64::total_cmp);
        us.dedup();
        let values = us
            .par_iter()
            .map(|&u| eval.value(u))
            .collect::<Result<Vec<f64>>>()?;
        let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
        let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        bounds.push((inf, sup));
        probes.extend(us.into_iter().zip(values));
    }
    let tail = &bounds[bounds.len().saturating_sub(3)..];
    let liminf_est = tail.iter().map(|b| b.0).fold(f64::INFINITY, f64::min);
    let limsup_est = tail.iter().map(|b| b.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(LimitEstimate {
        probes,
        liminf_est,
        limsup_est,
        converged: limsup_est - liminf_est <= ENVELOPE_TOL,
        extrapolated: None,
        tolerance: ENVELOPE_TOL,
    })
}

/// The windows `[e^k, e^{k+1}]` in `u`.
pub fn exponential_windows(ks: std::ops::RangeInclusive<u32>) -> Vec<(f64, f64)> {
    ks.map(|k| ((k as f64).exp(), ((k + 1) as f64).exp())).collect()
}

fn regular_spacing(us: &[f64]) -> bool {
    let h = us[1] - us[0];
    us.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs())
}

/// Evaluates `eval` along an increasing sequence.
///
/// Converged when the last three values span at most `tol`. On regularly
/// spaced sequences the last values are also extrapolated with Aitken's
/// Δ² process, which is exact for geometrically converging errors.
pub fn subsequence_limit(eval: &dyn PointEvaluator, u_sequence: &[f64], tol: f64) -> Result<LimitEstimate> {
    if u_sequence.len() < 4 {
        return domain(format!(
            "subsequence limit needs at least 4 points, got {}",
            u_sequence.len()
        ));
    }
    if u_sequence.windows(2).any(|w| !(w[0] < w[1])) {
        return domain("subsequence points must increase");
    }
    let values = u_sequence
        .par_iter()
        .map(|&u| eval.value(u))
        .collect::<Result<Vec<f64>>>()?;
    let n = values.len();
    let last3 = &values[n - 3..];
    let liminf_est = last3.iter().copied().fold(f64::INFINITY, f64::min);
    let limsup_est = last3.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let extrapolated = if regular_spacing(&u_sequence[n - 4..]) {
        let (x0, x1, x2) = (last3[0], last3[1], last3[2]);
        let d2 = x2 - 2.0 * x1 + x0;
        if d2.abs() > 1e-14 * x2.abs().max(1e-300) {
            Some(x2 - (x2 - x1).powi(2) / d2)
        } else {
            Some(x2)
        }
    } else {
        None
    };
    Ok(LimitEstimate {
        probes: u_sequence.iter().copied().zip(values).collect(),
        liminf_est,
        limsup_est,
        converged: limsup_est - liminf_est <= tol,
        extrapolated,
        tolerance: tol,
    })
}

/// Probe scales `u_k = e^k + k/2`: the middle of the window
/// `[e^k, e^k + k]` where the Dixmier average and the tail trace separate.
pub fn probe_scales(k_min: u32, k_max: u32) -> Vec<f64> {
    (k_min..=k_max).map(|k| (k as f64).exp() + k as f64 / 2.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapProbe {
    pub k: u32,
    pub u: f64,
    pub dixmier: f64,
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub q: f64,
    pub dixmier_limit: f64,
    pub xi_over_gamma_limit: f64,
    /// `Γ(1 + 1/q)` from the weight integral of `exp(-s^{-q})`.
    pub gamma_factor: f64,
    /// `gamma_factor · (xi_over_gamma_limit - dixmier_limit)`.
    pub gap: f64,
    pub probes: Vec<GapProbe>,
}

/// Gap report along `k = 14..=20`.
pub fn gap_report(q: f64) -> Result<GapReport> {
    gap_report_with_range(q, 14, 20)
}

pub fn gap_report_with_range(q: f64, k_min: u32, k_max: u32) -> Result<GapReport> {
    const TOL: f64 = 1e-4;
    if !(q > 0.0) {
        return domain(format!("q must be positive, got {q}"));
    }
    if k_min == 0 || k_max < k_min + 3 {
        return domain(format!("probe range {k_min}..={k_max} has fewer than 4 points"));
    }
    let gamma_factor = functionals::weight_integral(&TestFunction::heat_exp(q)?)?;
    let direct = functionals::gamma_factor(q);
    if (gamma_factor - direct).abs() > GAMMA_CROSSCHECK_TOL {
        return Err(Error::NotConverged(format!(
            "weight integral {gamma_factor} disagrees with Γ(1+1/q) = {direct}"
        )));
    }
    let model = SpectralModel::counterexample();
    let us = probe_scales(k_min, k_max);
    let dixmier = subsequence_limit(&ModelCurve::new(&model, CurveKind::Dixmier), &us, TOL)?;
    let tail = subsequence_limit(&ModelCurve::new(&model, CurveKind::Tail), &us, TOL)?;
    let probes: Vec<GapProbe> = (k_min..=k_max)
        .zip(dixmier.probes.iter().zip(&tail.probes))
        .map(|(k, (d, t))| GapProbe {
            k,
            u: d.0,
            dixmier: d.1,
            tail: t.1,
        })
        .collect();
    if !(dixmier.converged && tail.converged) {
        let mut dump = String::from("k,u,dixmier,tail\n");
        for p in &probes {
            let _ = writeln!(dump, "{},{:e},{:.12},{:.12}", p.k, p.u, p.dixmier, p.tail);
        }
        return Err(Error::NotConverged(format!(
            "probe values do not settle within {TOL:e}:\n{dump}"
        )));
    }
    let dixmier_limit = dixmier.limit();
    let xi_over_gamma_limit = tail.limit();
    Ok(GapReport {
        q,
        dixmier_limit,
        xi_over_gamma_limit,
        gamma_factor,
        gap: gamma_factor * (xi_over_gamma_limit - dixmier_limit),
        probes,
    })
}
