//! Small dense self-adjoint matrices and randomized checks of trace and
//! Löwner-order inequalities.
//!
//! Matrices are real symmetric: every inequality exercised here is already
//! sharp on the real case, and the eigensolver stays a plain cyclic Jacobi
//! iteration.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 64;

/// Largest tolerated `|M_ij - M_ji|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal norm is below this times `‖H‖_F`.
pub const JACOBI_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Slack below `-MARGIN_TOL · scale` counts as a violation.
pub const MARGIN_TOL: f64 = 1e-9;

/// Exponents cycled through by the randomized suites.
pub const SUITE_EXPONENTS: [f64; 4] = [0.1, 0.5, 1.0, 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    m: DMatrix<f64>,
}

impl HermitianMatrix {
    /// Validates shape, finiteness and symmetry, then symmetrizes exactly.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        if n != m.ncols() {
            return domain(format!("matrix is {}×{}, not square", n, m.ncols()));
        }
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return domain(format!("dimension {n} outside {MIN_DIM}..={MAX_DIM}"));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return domain("matrix has non-finite entries");
        }
        let asym = (&m - m.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return domain(format!("matrix is not symmetric (max |M - Mᵀ| = {asym:e})"));
        }
        let m = (&m + m.transpose()) * 0.5;
        Ok(Self { m })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        if flat.len() != n * n {
            return domain("rows do not form a square matrix");
        }
        Self::new(DMatrix::from_row_slice(n, n, &flat))
    }

    pub fn from_diagonal(d: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { m: &self.m * c }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(Self { m: &self.m + &other.m })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_dim(self, other)?;
        Ok(Self { m: &self.m - &other.m })
    }

    /// `X Y X` for symmetric `X`, `Y`; the result is symmetric.
    pub fn congruence(&self, inner: &Self) -> Result<Self> {
        same_dim(self, inner)?;
        let p = &self.m * &inner.m * &self.m;
        Ok(Self {
            m: (&p + p.transpose()) * 0.5,
        })
    }

    /// `Tr(X Y)`.
    pub fn trace_product(&self, other: &Self) -> Result<f64> {
        same_dim(self, other)?;
        Ok(self.m.component_mul(&other.m).sum())
    }
}

fn same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return domain(format!("dimension mismatch: {} vs {}", a.dim(), b.dim()));
    }
    Ok(())
}

/// `H = U diag(λ) Uᵀ` with `λ` nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: DMatrix<f64>,
}

fn jacobi(mut a: DMatrix<f64>) -> Eigen {
    let n = a.nrows();
    let mut v = DMatrix::<f64>::identity(n, n);
    let threshold = JACOBI_TOL * a.norm();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Eigen { values, vectors }
}

/// Cyclic Jacobi eigendecomposition.
pub fn eigendecompose(h: &HermitianMatrix) -> Eigen {
    jacobi(h.m.clone())
}

/// `U f(diag λ) Uᵀ`; fails when `f` is not finite at an eigenvalue.
pub fn matrix_function(h: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let e = eigendecompose(h);
    let mut fl = Vec::with_capacity(e.values.len());
    for &l in &e.values {
        let v = f(l);
        if !v.is_finite() {
            return domain(format!("function is not finite at eigenvalue {l}"));
        }
        fl.push(v);
    }
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(fl));
    let m = &e.vectors * d * e.vectors.transpose();
    Ok(HermitianMatrix {
        m: (&m + m.transpose()) * 0.5,
    })
}

/// `H^p` for positive semidefinite `H`; round-off negatives are clipped.
pub fn psd_power(h: &HermitianMatrix, p: f64) -> Result<HermitianMatrix> {
    matrix_function(h, |l| l.max(0.0).powf(p))
}

/// Singular values of an arbitrary real matrix, nonincreasing.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let gram = m.transpose() * m;
    let gram = (&gram + gram.transpose()) * 0.5;
    jacobi(gram).values.into_iter().map(|l| l.max(0.0).sqrt()).collect()
}

fn spectral_extremes(h: &HermitianMatrix) -> (f64, f64) {
    let e = eigendecompose(h);
    (e.values[e.values.len() - 1], e.values[0])
}

fn spectral_norm(h: &HermitianMatrix) -> f64 {
    let (lo, hi) = spectral_extremes(h);
    lo.abs().max(hi.abs())
}

// ---------------------------------------------------------------- reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Power,
    Loewner,
    Convex,
    Sandwich,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Power, Family::Loewner, Family::Convex, Family::Sandwich];

    pub fn name(self) -> &'static str {
        match self {
            Family::Power => "power",
            Family::Loewner => "loewner",
            Family::Convex => "convex",
            Family::Sandwich => "sandwich",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| crate::error::Error::Domain(format!("unknown inequality family `{s}`")))
    }
}

/// One inequality `lhs <= rhs` evaluated on one instance.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Slack {
    slack: f64,
    scale: f64,
}

impl Slack {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            slack: rhs - lhs,
            scale: lhs.abs().max(rhs.abs()).max(1.0),
        }
    }

    fn relative(&self) -> f64 {
        self.slack / self.scale
    }
}

/// Parameters of one randomized trial, enough to regenerate it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub index: u64,
    pub seed: u64,
    pub dim: usize,
    pub s: f64,
    /// `true` for the `B <= 1` branch.
    pub lower_branch: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub family: String,
    pub trials: usize,
    /// Most negative `slack / scale` observed, `scale = max(|lhs|, |rhs|, 1)`.
    pub worst_margin: f64,
    /// Seeds of the trials with `slack < -1e-9 · scale`.
    pub failures: Vec<u64>,
    pub failed_trials: Vec<TrialSpec>,
    pub base_seed: u64,
}

impl InequalityReport {
    fn single(family: Family, slacks: &[Slack]) -> Self {
        let worst = slacks.iter().map(Slack::relative).fold(f64::INFINITY, f64::min);
        Self {
            family: family.name().into(),
            trials: 1,
            worst_margin: worst,
            failures: if worst < -MARGIN_TOL { vec![0] } else { Vec::new() },
            failed_trials: Vec::new(),
            base_seed: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.worst_margin >= -MARGIN_TOL
    }
}

// ---------------------------------------------------------------- single-instance checks

fn power_slacks(a: &HermitianMatrix, c: &HermitianMatrix, s: f64) -> Result<Vec<Slack>> {
    if !(s > 0.0) {
        return domain(format!("exponent must be positive, got {s}"));
    }
    same_dim(a, c)?;
    let r = 1.0 + s;
    let ta = psd_power(a, r)?.trace();
    let tc = psd_power(c, r)?.trace();
    let tsum = psd_power(&a.add(c)?, r)?.trace();
    Ok(vec![Slack::new(ta + tc, tsum), Slack::new(tsum, 2f64.powf(s) * (ta + tc))])
}

/// `Tr(A^{1+s}) + Tr(C^{1+s}) <= Tr((A+C)^{1+s}) <= 2^s (Tr(A^{1+s}) + Tr(C^{1+s}))`.
pub fn power_trace_bounds_check(a: &HermitianMatrix, c: &HermitianMatrix, s: f64) -> Result<InequalityReport> {
    Ok(InequalityReport::single(Family::Power, &power_slacks(a, c, s)?))
}

fn branch_of(b: &HermitianMatrix) -> Result<bool> {
    let (lo, hi) = spectral_extremes(b);
    if lo < -1e-10 * spectral_norm(b).max(1.0) {
        return domain(format!("B is not positive semidefinite (λ_min = {lo})"));
    }
    if hi <= 1.0 + 1e-12 {
        Ok(true)
    } else if lo >= 1.0 - 1e-12 {
        Ok(false)
    } else {
        domain(format!("B has spectrum [{lo}, {hi}] on both sides of 1"))
    }
}

fn loewner_slacks(a: &HermitianMatrix, b: &HermitianMatrix, s: f64) -> Result<Vec<Slack>> {
    same_dim(a, b)?;
    let lower = branch_of(b)?;
    let root = psd_power(b, 0.5)?;
    let outer = root.congruence(&psd_power(a, 1.0 + s)?)?;
    let inner = psd_power(&root.congruence(a)?, 1.0 + s)?;
    let diff = if lower { outer.sub(&inner)? } else { inner.sub(&outer)? };
    let (lo, _) = spectral_extremes(&diff);
    let scale = spectral_norm(&outer).max(spectral_norm(&inner)).max(1.0);
    Ok(vec![Slack { slack: lo, scale }])
}

/// `(B^{1/2} A B^{1/2})^{1+s} <= B^{1/2} A^{1+s} B^{1/2}` in the Löwner order
/// for `0 <= B <= 1`, reversed for `B >= 1`. The slack is the smallest
/// eigenvalue of the difference.
pub fn loewner_cps_check(a: &HermitianMatrix, b: &HermitianMatrix, s: f64) -> Result<InequalityReport> {
    Ok(InequalityReport::single(Family::Loewner, &loewner_slacks(a, b, s)?))
}

fn convex_slacks(a: &HermitianMatrix, b: &HermitianMatrix, f: &dyn Fn(f64) -> f64) -> Result<Vec<Slack>> {
    same_dim(a, b)?;
    let lower = branch_of(b)?;
    let root = psd_power(b, 0.5)?;
    let outer = root.congruence(&matrix_function(a, f)?)?.trace();
    let inner = matrix_function(&root.congruence(a)?, f)?.trace();
    Ok(vec![if lower {
        Slack::new(inner, outer)
    } else {
        Slack::new(outer, inner)
    }])
}

/// `Tr(f(B^{1/2} A B^{1/2})) <= Tr(B^{1/2} f(A) B^{1/2})` for convex `f` with
/// `f(0) = 0` and `0 <= B <= 1`; reversed for `B >= 1`.
pub fn convex_trace_check(a: &HermitianMatrix, b: &HermitianMatrix, f: &dyn Fn(f64) -> f64) -> Result<InequalityReport> {
    Ok(InequalityReport::single(Family::Convex, &convex_slacks(a, b, f)?))
}

fn sandwich_slacks(a: &HermitianMatrix, b: &HermitianMatrix, m: f64, big_m: f64, s: f64) -> Result<Vec<Slack>> {
    same_dim(a, b)?;
    let (lo, hi) = spectral_extremes(b);
    let tol = 1e-10 * hi.abs().max(1.0);
    if !(m > 0.0 && m <= lo + tol && big_m >= hi - tol) {
        return domain(format!("bounds [{m}, {big_m}] do not enclose the spectrum [{lo}, {hi}] of B"));
    }
    let r = 1.0 + s;
    let middle = psd_power(&psd_power(b, 0.5)?.congruence(a)?, r)?.trace();
    let weighted = psd_power(a, r)?.trace_product(b)?;
    Ok(vec![
        Slack::new(m.powf(s) * weighted, middle),
        Slack::new(middle, big_m.powf(s) * weighted),
    ])
}

/// `m^s Tr(A^{1+s} B) <= Tr((B^{1/2} A B^{1/2})^{1+s}) <= M^s Tr(A^{1+s} B)`
/// for `0 < m <= B <= M`.
pub fn zeta_sandwich_check(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    m: f64,
    big_m: f64,
    s: f64,
) -> Result<InequalityReport> {
    Ok(InequalityReport::single(Family::Sandwich, &sandwich_slacks(a, b, m, big_m, s)?))
}

// ---------------------------------------------------------------- randomized suites

/// Counter-based expansion of the base seed (splitmix64 finalizer).
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    let mut z = base.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Trial `index` cycles the exponent fastest, then the branch, then the
/// dimension through `2..=dim_max`.
pub fn trial_spec(base: u64, index: u64, dim_max: usize) -> TrialSpec {
    let dims = (dim_max - MIN_DIM + 1) as u64;
    TrialSpec {
        index,
        seed: trial_seed(base, index),
        dim: MIN_DIM + ((index / 8) % dims) as usize,
        s: SUITE_EXPONENTS[(index % 4) as usize],
        lower_branch: (index / 4).is_multiple_of(2),
    }
}

/// `G Gᵀ / n` with a standard Gaussian `n × n` factor.
pub fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let m = &g * g.transpose() / n as f64;
    HermitianMatrix {
        m: (&m + m.transpose()) * 0.5,
    }
}

/// Random PSD matrix moved into `B <= 1` (divided by `λ_max`) or `B >= 1`
/// (shifted so that `λ_min = 1`).
pub fn random_branch_matrix(rng: &mut ChaCha8Rng, n: usize, lower: bool) -> HermitianMatrix {
    let b = random_psd(rng, n);
    let (lo, hi) = spectral_extremes(&b);
    if lower {
        b.scale(1.0 / hi)
    } else {
        let shift = DMatrix::<f64>::identity(n, n) * (1.0 - lo);
        HermitianMatrix { m: &b.m + shift }
    }
}

/// Convex functions with `f(0) = 0` used by the convex-trace suite.
fn convex_choice(index: u64, s: f64) -> Box<dyn Fn(f64) -> f64> {
    match (index / 2) % 4 {
        0 => Box::new(|u: f64| (u - 0.3).max(0.0)),
        1 => Box::new(|u: f64| u * u),
        2 => Box::new(move |u: f64| u.max(0.0).powf(1.0 + s)),
        _ => Box::new(|u: f64| u.exp_m1()),
    }
}

fn run_trial(family: Family, spec: &TrialSpec) -> Result<Vec<Slack>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.dim;
    let a = random_psd(&mut rng, n);
    match family {
        Family::Power => {
            let c = random_psd(&mut rng, n);
            power_slacks(&a, &c, spec.s)
        }
        Family::Loewner => {
            let b = random_branch_matrix(&mut rng, n, spec.lower_branch);
            loewner_slacks(&a, &b, spec.s)
        }
        Family::Convex => {
            let b = random_branch_matrix(&mut rng, n, spec.lower_branch);
            let f = convex_choice(spec.index, spec.s);
            convex_slacks(&a, &b, &*f)
        }
        Family::Sandwich => {
            let b = random_psd(&mut rng, n);
            let b = HermitianMatrix {
                m: &b.m + DMatrix::<f64>::identity(n, n) * 0.1,
            };
            let (lo, hi) = spectral_extremes(&b);
            sandwich_slacks(&a, &b, lo, hi, spec.s)
        }
    }
}

/// Runs `trials` independent random instances of `family` in parallel and
/// aggregates them in trial order.
pub fn run_suite(family: Family, trials: usize, dim_max: usize, seed: u64) -> Result<InequalityReport> {
    if !(MIN_DIM..=MAX_DIM).contains(&dim_max) {
        return domain(format!("dim_max {dim_max} outside {MIN_DIM}..={MAX_DIM}"));
    }
    if trials == 0 {
        return domain("a suite needs at least one trial");
    }
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let spec = trial_spec(seed, i, dim_max);
            let worst = run_trial(family, &spec)?
                .iter()
                .map(Slack::relative)
                .fold(f64::INFINITY, f64::min);
            Ok((spec, worst))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst_margin = outcomes.iter().map(|o| o.1).fold(f64::INFINITY, f64::min);
    let failed: Vec<TrialSpec> = outcomes
        .iter()
        .filter(|o| o.1 < -MARGIN_TOL)
        .map(|o| o.0)
        .collect();
    Ok(InequalityReport {
        family: family.name().into(),
        trials,
        worst_margin,
        failures: failed.iter().map(|t| t.seed).collect(),
        failed_trials: failed,
        base_seed: seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn residual(h: &HermitianMatrix, e: &Eigen) -> f64 {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(e.values.clone()));
        (h.matrix() * &e.vectors - &e.vectors * d).norm()
    }

    #[test]
    fn eigen_examples() {
        let d = HermitianMatrix::from_diagonal(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(eigendecompose(&d).values, vec![3.0, 2.0, 1.0]);
        let i = HermitianMatrix::identity(4).unwrap();
        assert!(eigendecompose(&i).values.iter().all(|&l| l == 1.0));
        for seed in 0..20 {
            let mut r = rng(seed);
            let g = DMatrix::<f64>::from_fn(6, 6, |_, _| StandardNormal.sample(&mut r));
            let h = HermitianMatrix::new((&g + g.transpose()) * 0.5).unwrap();
            let e = eigendecompose(&h);
            assert!(residual(&h, &e) <= 1e-10 * h.frobenius_norm());
            let orth = e.vectors.transpose() * &e.vectors - DMatrix::<f64>::identity(6, 6);
            assert!(orth.amax() <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
            // nalgebra's symmetric eigensolver as an independent oracle
            let mut theirs: Vec<f64> = h.matrix().clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            theirs.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in e.values.iter().zip(&theirs) {
                assert!((a - b).abs() <= 1e-10 * h.frobenius_norm());
            }
        }
    }

    #[test]
    fn rejects_asymmetric_and_bad_sizes() {
        assert!(HermitianMatrix::from_rows(&[&[1.0, 2.0], &[2.1, 1.0]]).is_err());
        assert!(HermitianMatrix::new(DMatrix::<f64>::identity(1, 1)).is_err());
        assert!(HermitianMatrix::new(DMatrix::<f64>::identity(65, 65)).is_err());
        assert!(HermitianMatrix::new(DMatrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn matrix_function_examples() {
        let h = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]).unwrap();
        let id = matrix_function(&h, |x| x).unwrap();
        assert!((id.matrix() - h.matrix()).amax() < 1e-13);
        let d = HermitianMatrix::from_diagonal(&[1.0, 2.0]).unwrap();
        let sq = matrix_function(&d, |x| x * x).unwrap();
        assert!((sq.matrix() - DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 4.0]))).amax() < 1e-14);
        let neg = HermitianMatrix::from_diagonal(&[-1.0, 2.0]).unwrap();
        assert!(matrix_function(&neg, f64::sqrt).is_err());
    }

    #[test]
    fn trace_of_function_is_eigenvalue_sum() {
        for seed in 0..10 {
            let mut r = rng(seed);
            let a = random_psd(&mut r, 5);
            let h = HermitianMatrix {
                m: &a.m + DMatrix::<f64>::identity(5, 5) * 0.1,
            };
            let f = |u: f64| (-1.0 / u).exp();
            let tr = matrix_function(&h, f).unwrap().trace();
            let direct: f64 = eigendecompose(&h).values.iter().map(|&l| f(l)).sum();
            assert!((tr - direct).abs() <= 1e-12 * direct.abs());
        }
    }

    #[test]
    fn singular_value_examples() {
        let d = DMatrix::from_row_slice(2, 2, &[-3.0, 0.0, 0.0, 2.0]);
        let sv = singular_values(&d);
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14);
        let (c, s) = (0.6, 0.8);
        let rot = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        assert!(singular_values(&rot).iter().all(|x| (x - 1.0).abs() < 1e-14));
        let mut r = rng(3);
        let m = DMatrix::<f64>::from_fn(5, 5, |_, _| StandardNormal.sample(&mut r));
        let oracle = m.clone().svd(false, false).singular_values;
        let mut oracle: Vec<f64> = oracle.iter().copied().collect();
        oracle.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in singular_values(&m).iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10);
        }
        let p = random_psd(&mut r, 4);
        let ev = eigendecompose(&p).values;
        for (a, b) in singular_values(p.matrix()).iter().zip(&ev) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn power_check_examples() {
        let a = HermitianMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let c = HermitianMatrix::from_diagonal(&[0.0, 2.0]).unwrap();
        let slacks = power_slacks(&a, &c, 0.7).unwrap();
        assert!(slacks[0].slack.abs() < 1e-14);
        let i = HermitianMatrix::identity(2).unwrap();
        let slacks = power_slacks(&i, &i, 1.0).unwrap();
        assert!((slacks[0].slack - 4.0).abs() < 1e-13);
        assert!(slacks[1].slack.abs() < 1e-13);
        let three = HermitianMatrix::identity(3).unwrap();
        assert!(power_trace_bounds_check(&i, &three, 1.0).is_err());
    }

    #[test]
    fn loewner_examples() {
        let mut r = rng(11);
        let a = random_psd(&mut r, 4);
        let i = HermitianMatrix::identity(4).unwrap();
        let s = loewner_slacks(&a, &i, 1.0).unwrap();
        assert!(s[0].slack.abs() < 1e-12);
        let half = i.scale(0.5);
        assert!(loewner_cps_check(&a, &half, 1.0).unwrap().passed());
        let mixed = HermitianMatrix::from_diagonal(&[0.5, 0.5, 2.0, 2.0]).unwrap();
        assert!(loewner_cps_check(&a, &mixed, 1.0).is_err());
    }

    #[test]
    fn convex_examples() {
        let mut r = rng(5);
        let a = random_psd(&mut r, 4);
        let b = random_branch_matrix(&mut r, 4, true);
        let lin = convex_slacks(&a, &b, &|u| u).unwrap();
        assert!(lin[0].slack.abs() < 1e-12);
        let cut = convex_trace_check(&a, &b, &|u: f64| (u - 0.3).max(0.0)).unwrap();
        assert!(cut.passed());
    }

    #[test]
    fn sandwich_examples() {
        let mut r = rng(9);
        let a = random_psd(&mut r, 3);
        let b = HermitianMatrix::identity(3).unwrap().scale(1.7);
        let s = sandwich_slacks(&a, &b, 1.7, 1.7, 1.0).unwrap();
        assert!(s[0].slack.abs() <= 1e-12 * s[0].scale && s[1].slack.abs() <= 1e-12 * s[1].scale);
        let a = HermitianMatrix::from_diagonal(&[1.0, 0.5]).unwrap();
        let b = HermitianMatrix::from_diagonal(&[1.0, 2.0]).unwrap();
        // commuting case: middle = Σ (a_i b_i)^2 = 1 + 1, weighted = Σ a_i² b_i = 1 + 0.5
        let s = sandwich_slacks(&a, &b, 1.0, 2.0, 1.0).unwrap();
        assert!((s[0].slack - 0.5).abs() < 1e-13);
        assert!((s[1].slack - 1.0).abs() < 1e-13);
        assert!(zeta_sandwich_check(&a, &b, 1.5, 2.0, 1.0).is_err());
    }

    #[test]
    fn trial_specs_cover_all_combinations() {
        let specs: Vec<TrialSpec> = (0..40).map(|i| trial_spec(7, i, 6)).collect();
        for s in SUITE_EXPONENTS {
            for lower in [true, false] {
                assert!(specs.iter().any(|t| t.s == s && t.lower_branch == lower));
            }
        }
        assert!((2..=6).all(|d| specs.iter().any(|t| t.dim == d)));
        assert_ne!(trial_seed(7, 0), trial_seed(7, 1));
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite(Family::Power, 16, 4, 42).unwrap();
        let b = run_suite(Family::Power, 16, 4, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
    }
}
