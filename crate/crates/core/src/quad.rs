//! Adaptive Simpson quadrature.

const MAX_DEPTH: u32 = 48;

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol || m <= a || m >= b {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
}

/// Integrates `f` over `[a, b]` by adaptive Simpson bisection with local
/// tolerance `tol`. The interval is pre-split into 8 panels so that narrow
/// features are not missed by the first Simpson estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -adaptive_simpson(f, b, a, tol);
    }
    const PANELS: usize = 8;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == PANELS { b } else { lo + h };
            let fa = f(lo);
            let fb = f(hi);
            let fm = f(0.5 * (lo + hi));
            let whole = simpson(fa, fm, fb, lo, hi);
            recurse(&f, lo, hi, fa, fm, fb, whole, tol / PANELS as f64, 0)
        })
        .sum()
}

/// Integrates over `[a, b]` split at the interior `breaks`, so that jumps
/// and kinks of `f` sit on panel boundaries.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let n = (pts.len() - 1) as f64;
    pts.windows(2)
        .map(|w| adaptive_simpson(&f, w[0], w[1], tol / n))
        .sum()
}

/// `∫_a^∞ exp(-z^r) dz` for `a >= 0`, `r > 0`. The integrand is cut where it
/// drops below `e^{-60}`.
pub fn exp_power_tail(a: f64, r: f64, tol: f64) -> f64 {
    let z_max = 60f64.powf(1.0 / r);
    if a >= z_max {
        return 0.0;
    }
    // bulk of the mass sits below z = 1; keep that boundary explicit
    integrate_with_breaks(|z| (-z.powf(r)).exp(), a, z_max, &[1.0], tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 3.0, 1e-12);
        assert!((v - (81.0 / 4.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn smooth_integrals() {
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-11);
        let v = adaptive_simpson(|x: f64| (-x).exp(), 0.0, 50.0, 1e-13);
        assert!((v - (1.0 - (-50f64).exp())).abs() < 1e-11);
    }

    #[test]
    fn jump_on_break_is_exact() {
        let f = |x: f64| if x < 1.3 { 1.0 } else { 0.0 };
        let v = integrate_with_breaks(f, 0.0, 2.0, &[1.3], 1e-12);
        assert!((v - 1.3).abs() < 1e-12);
    }

    #[test]
    fn exp_power_tail_known_values() {
        // ∫_0^∞ e^{-z} = 1, ∫_0^∞ e^{-z²} = √π/2
        assert!((exp_power_tail(0.0, 1.0, 1e-13) - 1.0).abs() < 1e-11);
        let half_sqrt_pi = 0.5 * std::f64::consts::PI.sqrt();
        assert!((exp_power_tail(0.0, 2.0, 1e-13) - half_sqrt_pi).abs() < 1e-11);
        assert!((exp_power_tail(2.0, 1.0, 1e-13) - (-2f64).exp()).abs() < 1e-12);
    }
}
