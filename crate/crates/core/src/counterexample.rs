//! The slowly-decaying sequence model whose Dixmier average and tail-trace
//! average oscillate between `1/(e-1)` and `e/(e-1)`.
//!
//! The singular value function is `x = sup_k e^{-e^k} χ_[0, e^{k+e^k}]`, so
//! plateau `k >= 1` carries the value `e^{-e^k}` on
//! `[e^{k-1+e^{k-1}}, e^{k+e^k})` (plateau 1 starts at 0). Every quantity is
//! computed from `k` on demand; nothing is tabulated. Abscissae are handled
//! through `u = ln t` and values through `w = ln x = -e^k`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::logspace::{log1mexp, LogAccumulator};

/// Default plateau horizon: plateau 64 ends at `u = 64 + e^64 ≈ 6e27`.
pub const DEFAULT_K_MAX: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleModel {
    pub k_max: u32,
}

impl Default for CounterexampleModel {
    fn default() -> Self {
        Self { k_max: DEFAULT_K_MAX }
    }
}

/// `u`-coordinate of the right end of plateau `k`, `k + e^k`. For `k = 0`
/// this is `-inf`: the first plateau starts at the origin.
pub fn boundary(k: u32) -> f64 {
    if k == 0 {
        f64::NEG_INFINITY
    } else {
        k as f64 + (k as f64).exp()
    }
}

/// `ln` of the plateau value, `-e^k`.
pub fn log_value(k: u32) -> f64 {
    -(k as f64).exp()
}

/// `ln` of the plateau length `e^{B_k} - e^{B_{k-1}}`.
pub fn log_length(k: u32) -> f64 {
    debug_assert!(k >= 1);
    if let Some(v) = tables().length.get(k as usize) {
        return *v;
    }
    compute_log_length(k)
}

fn compute_log_length(k: u32) -> f64 {
    if k == 1 {
        boundary(1)
    } else {
        boundary(k) + log1mexp(boundary(k - 1) - boundary(k))
    }
}

/// `ln` of the plateau mass `length · value`. `B_k - e^k = k` is applied
/// symbolically so that no digits are lost for large `k`.
pub fn log_mass(k: u32) -> f64 {
    debug_assert!(k >= 1);
    if let Some(v) = tables().mass.get(k as usize) {
        return *v;
    }
    compute_log_mass(k)
}

fn compute_log_mass(k: u32) -> f64 {
    if k == 1 {
        1.0
    } else {
        k as f64 + log1mexp(boundary(k - 1) - boundary(k))
    }
}

struct Tables {
    length: Vec<f64>,
    mass: Vec<f64>,
}

/// Plateau lengths and masses for `k <= DEFAULT_K_MAX`; index 0 is unused.
fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut length = vec![f64::NAN];
        let mut mass = vec![f64::NAN];
        for k in 1..=DEFAULT_K_MAX {
            length.push(compute_log_length(k));
            mass.push(compute_log_mass(k));
        }
        Tables { length, mass }
    })
}

/// The `k` with `B_{k-1} <= u < B_k`; `u` below the first boundary gives 1.
pub fn plateau_index(u: f64) -> u32 {
    if u < boundary(1) {
        return 1;
    }
    // B_k ≈ e^k, start just below ln u and walk
    let mut k = (u.ln().floor() as i64 - 1).max(1) as u32;
    while boundary(k) > u && k > 1 {
        k -= 1;
    }
    while boundary(k) <= u {
        k += 1;
    }
    k
}

/// `K(u) = max{n >= 1 : e^n < u}`, or 0 when `u <= e`.
pub fn level_index(u: f64) -> u32 {
    if u <= std::f64::consts::E {
        return 0;
    }
    let mut n = (u.ln().ceil() as i64).max(1) as u32;
    while n > 0 && (n as f64).exp() >= u {
        n -= 1;
    }
    while ((n + 1) as f64).exp() < u {
        n += 1;
    }
    n
}

impl CounterexampleModel {
    pub fn new(k_max: u32) -> Self {
        Self { k_max }
    }

    /// `ln μ(e^u)`.
    pub fn log_mu(&self, u: f64) -> f64 {
        log_value(plateau_index(u))
    }

    /// `ln ∫_0^{e^u} x(s) ds`.
    pub fn log_partial_integral(&self, u: f64) -> f64 {
        if u == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let k = plateau_index(u);
        let mut acc = LogAccumulator::new();
        for n in 1..k {
            acc.add(log_mass(n));
        }
        let kf = (k as f64).exp();
        if k == 1 {
            acc.add(u - kf);
        } else {
            // e^{-e^k}(t - e^{B_{k-1}})
            acc.add((u - kf) + log1mexp(boundary(k - 1) - u));
        }
        acc.value()
    }

    /// `∫_0^t x(s) ds` with `t = e^u`.
    pub fn cx_partial_integral(&self, u: f64) -> f64 {
        self.log_partial_integral(u).exp()
    }

    /// `∫_{x > 1/t} (x(s) - 1/t) ds` with `t = e^u`. Each plateau with
    /// `e^n < u` contributes `len_n (e^{-e^n} - e^{-u})`, a positive term, so
    /// the sum has no cancellation.
    pub fn cx_tail_trace(&self, u: f64) -> f64 {
        let big_k = level_index(u);
        let mut acc = LogAccumulator::new();
        for n in 1..=big_k {
            let en = (n as f64).exp();
            acc.add(log_mass(n) + log1mexp(en - u));
        }
        acc.value().exp()
    }

    /// Same quantity as [`Self::cx_tail_trace`] written as the plateau-mass sum
    /// minus `exp(K + e^K - u)`.
    pub fn cx_tail_trace_difference_form(&self, u: f64) -> f64 {
        let big_k = level_index(u);
        if big_k == 0 {
            return 0.0;
        }
        let mut acc = LogAccumulator::new();
        for n in 1..=big_k {
            acc.add(log_mass(n));
        }
        acc.value().exp() - (boundary(big_k) - u).exp()
    }

    /// `ln d(s)` for the level `s = e^{log_level}`: the measure of `{x > s}`
    /// is `e^{B_K}` with `K = max{n : e^n < -log_level}`.
    pub fn log_distribution(&self, log_level: f64) -> f64 {
        let big_k = level_index(-log_level);
        if big_k == 0 {
            f64::NEG_INFINITY
        } else {
            boundary(big_k)
        }
    }

    /// Plateau boundaries `B_k` inside `[lo, hi]`, for `k <= k_max`.
    pub fn boundaries_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        (1..=self.k_max)
            .map(boundary)
            .filter(|&b| b >= lo && b <= hi)
            .collect()
    }

    /// Level-set jump points `u = e^n` of the tail trace inside `[lo, hi]`.
    pub fn level_jumps_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        (1..=self.k_max)
            .map(|n| (n as f64).exp())
            .filter(|&b| b >= lo && b <= hi)
            .collect()
    }

    /// Membership data: the Dixmier-ideal bound at the plateau ends and a
    /// witness that `s μ(s)` is unbounded.
    pub fn cx_membership_report(&self) -> MembershipReport {
        let e = std::f64::consts::E;
        let bound_limit = e * e / (e - 1.0);
        let bound_probes: Vec<(u32, f64)> = (1..=20)
            .map(|k| {
                let u = boundary(k);
                let ratio = (self.log_partial_integral(u) - crate::logspace::softplus(u).ln()).exp();
                (k, ratio)
            })
            .collect();
        let bound_max = bound_probes.iter().map(|p| p.1).fold(0.0, f64::max);
        // s_k = e^{B_k} - 1 lies inside plateau k, so s μ(s) = (e^{B_k} - 1) e^{-e^k}
        let witness: Vec<(u32, f64)> = (1..=20)
            .map(|k| {
                let b = boundary(k);
                (k, (k as f64 + log1mexp(-b)).exp())
            })
            .collect();
        let witness_unbounded = witness
            .iter()
            .all(|&(k, v)| v >= ((k as f64) - 1.0).exp());
        MembershipReport {
            bound_probes,
            bound_max,
            bound_limit,
            in_dixmier_ideal: bound_max <= bound_limit,
            witness,
            witness_unbounded,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipReport {
    /// `(k, ∫_0^t x / log(1+t))` at `t = e^{k+e^k}`.
    pub bound_probes: Vec<(u32, f64)>,
    pub bound_max: f64,
    /// `e²/(e-1)`.
    pub bound_limit: f64,
    pub in_dixmier_ideal: bool,
    /// `(k, s_k μ(s_k))` with `s_k = e^{k+e^k} - 1`.
    pub witness: Vec<(u32, f64)>,
    /// Every witness satisfies `s_k μ(s_k) >= e^{k-1}`.
    pub witness_unbounded: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn scan_index(u: f64) -> u32 {
        // linear scan: first k whose right boundary exceeds u
        (1..200).find(|&k| u < boundary(k)).unwrap()
    }

    #[test]
    fn plateau_index_examples() {
        assert_eq!(plateau_index(2.0 + 2f64.exp()), 3);
        assert_eq!(plateau_index(5.0), 2);
        assert_eq!(plateau_index(0.5), 1);
        assert_eq!(plateau_index(-3.0), 1);
    }

    #[test]
    fn plateau_index_matches_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let u: f64 = (rng.random::<f64>() * 20.0).exp();
            assert_eq!(plateau_index(u), scan_index(u), "u = {u}");
        }
    }

    #[test]
    fn level_index_is_strict() {
        assert_eq!(level_index(E), 0);
        assert_eq!(level_index(E + 1e-9), 1);
        // u = e^2 exactly: e^2 < u is false
        assert_eq!(level_index(2f64.exp()), 1);
        assert_eq!(level_index(2f64.exp() * (1.0 + 1e-15)), 2);
    }

    #[test]
    fn first_plateau_is_linear() {
        let m = CounterexampleModel::default();
        for &t in &[0.5, 1.0, 7.0, 40.0] {
            let v = m.cx_partial_integral(f64::ln(t));
            assert!((v - (-E).exp() * t).abs() <= 1e-14 * v);
        }
    }

    #[test]
    fn partial_integral_continuous_across_boundaries() {
        let m = CounterexampleModel::default();
        for k in 1..12 {
            let b = boundary(k);
            let b_left = f64::from_bits(b.to_bits() - 1);
            let left = m.cx_partial_integral(b_left);
            let right = m.cx_partial_integral(b);
            // one ulp of u moves t by e^b (b - b_left) at slope e^{-e^k}
            let slope_step = (b + log_value(k)).exp() * (b - b_left);
            let jump = right - left - slope_step;
            assert!(jump.abs() <= 1e-12 * right, "k={k}: {left} vs {right}");
        }
    }

    #[test]
    fn tail_trace_forms_agree() {
        let m = CounterexampleModel::default();
        for &u in &[3.0, 5.0, 9.0, 30.0, 200.0, 5000.0] {
            let a = m.cx_tail_trace(u);
            let b = m.cx_tail_trace_difference_form(u);
            assert!((a - b).abs() <= 1e-10 * a.max(1.0), "u={u}: {a} vs {b}");
            assert!(a >= 0.0);
        }
        assert_eq!(m.cx_tail_trace(E), 0.0);
    }

    #[test]
    fn tail_trace_level_jumps() {
        // crossing u = e^n adds plateau n to the level set: the plateau-mass sum
        // jumps by exactly mass_n, and the subtracted term e^{B_K - u} jumps by
        // the same amount, so the tail trace itself stays continuous
        let m = CounterexampleModel::default();
        for n in 2..10u32 {
            let u = (n as f64).exp();
            let u_right = u * (1.0 + 1e-14);
            let before = m.cx_tail_trace(u);
            let after = m.cx_tail_trace(u_right);
            let mass_n = log_mass(n).exp();
            let subtracted_jump = (boundary(n) - u).exp() - (boundary(n - 1) - u).exp();
            assert!((subtracted_jump - mass_n).abs() <= 1e-12 * mass_n);
            assert!((after - before).abs() <= 1e-9 * before, "n={n}: {before} -> {after}");
        }
    }

    #[test]
    fn membership_report_values() {
        let r = CounterexampleModel::default().cx_membership_report();
        assert!(r.in_dixmier_ideal);
        assert!((r.bound_limit - 4.300_258_535_328_371).abs() < 1e-12);
        let k10 = r.bound_probes.iter().find(|p| p.0 == 10).unwrap().1;
        assert!(k10 <= r.bound_limit);
        let w5 = r.witness.iter().find(|p| p.0 == 5).unwrap().1;
        assert!(w5 >= 4f64.exp() && w5 > 10.0);
        assert!(r.witness.windows(2).all(|w| w[1].1 > w[0].1));
        assert!(r.witness_unbounded);
    }
}
