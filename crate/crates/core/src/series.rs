//! Closed forms and Euler–Maclaurin tails for the harmonic sequence `1/n`.

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_{2j} / (2j)!` for j = 1..=7.
const BERNOULLI_OVER_FACT: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
];

/// `H_m = Σ_{n=1}^m 1/n`.
pub fn harmonic_number(m: u64) -> f64 {
    if m < 64 {
        return (1..=m).map(|n| 1.0 / n as f64).sum();
    }
    let x = m as f64;
    let x2 = x * x;
    x.ln() + EULER_GAMMA + 0.5 / x - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2)
        - 1.0 / (252.0 * x2 * x2 * x2)
        + 1.0 / (240.0 * x2 * x2 * x2 * x2)
}

/// `∫_0^t μ(s) ds` for `μ(s) = 1/(⌊s⌋+1)`, parametrised by `u = ln t`.
pub fn harmonic_partial_integral(u: f64) -> f64 {
    if u == f64::NEG_INFINITY {
        return 0.0;
    }
    if u > 36.0 {
        // t > 4e15: the fractional correction is below 1/t
        return u + EULER_GAMMA;
    }
    let t = u.exp();
    let m = t.floor();
    harmonic_number(m as u64) + (t - m) / (m + 1.0)
}

/// `Σ_{n ≥ m} n^{-2}` for `m >= 1`.
pub fn inverse_square_tail(m: u64) -> f64 {
    const START: u64 = 32;
    let big = m.max(START);
    let direct: f64 = (m..big).map(|n| 1.0 / (n as f64 * n as f64)).sum();
    let x = big as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    direct
        + inv
            * (1.0 + 0.5 * inv + inv2 / 6.0 - inv2 * inv2 / 30.0 + inv2 * inv2 * inv2 / 42.0
                - inv2 * inv2 * inv2 * inv2 / 30.0)
}

/// `e^{-u} ζ(1 + e^{-u})`, i.e. `(1/t) ζ(1 + 1/t)` for `t = e^u`, evaluated
/// without forming `1/(s-1) = t` explicitly.
pub fn scaled_zeta_near_one(u: f64) -> f64 {
    const N: u64 = 16;
    let inv_t = (-u).exp();
    let s = 1.0 + inv_t;
    let head: f64 = (1..N).map(|n| (n as f64).powf(-s)).sum();
    let x = N as f64;
    // N^{1-s}/(s-1) scaled by 1/t is N^{-1/t}
    let integral_part = (-x.ln() * inv_t).exp();
    let mut rest = 0.5 * x.powf(-s);
    // rising factorial s(s+1)...(s+2j-2) times N^{-s-2j+1}
    let mut rising = s;
    let mut power = x.powf(-s - 1.0);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        rest += b * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= x * x;
    }
    integral_part + inv_t * (head + rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_numbers_direct_vs_asymptotic() {
        let direct: f64 = (1..=1000u64).map(|n| 1.0 / n as f64).sum();
        assert!((harmonic_number(1000) - direct).abs() < 1e-13);
        let direct: f64 = (1..=64u64).map(|n| 1.0 / n as f64).sum();
        assert!((harmonic_number(64) - direct).abs() < 1e-14);
        assert_eq!(harmonic_number(3), 1.0 + 0.5 + 1.0 / 3.0);
    }

    #[test]
    fn harmonic_partial_integral_small_t() {
        assert!((harmonic_partial_integral(3f64.ln()) - 11.0 / 6.0).abs() < 1e-14);
        // t = 2.5: 1 + 1/2 + 0.5/3
        assert!((harmonic_partial_integral(2.5f64.ln()) - (1.5 + 0.5 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn inverse_square_tail_values() {
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((inverse_square_tail(1) - pi2_6).abs() < 1e-14);
        let direct: f64 = (1..10u64).map(|n| 1.0 / (n * n) as f64).sum();
        assert!((inverse_square_tail(10) - (pi2_6 - direct)).abs() < 1e-14);
        // large m: ~ 1/m
        let m = 1_000_000_000u64;
        assert!((inverse_square_tail(m) * m as f64 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zeta_at_two_and_three() {
        // scaled_zeta_near_one(u) with 1/t = 1 is ζ(2)
        let z2 = scaled_zeta_near_one(0.0);
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
        // 1/t = 2 → ζ(3)/... : (1/t)ζ(1+1/t) with t = 1/2 is 2ζ(3)
        let v = scaled_zeta_near_one(-(2f64.ln()));
        assert!((v - 2.0 * 1.202_056_903_159_594_3).abs() < 1e-13);
    }
}
