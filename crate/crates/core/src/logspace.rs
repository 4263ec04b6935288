//! Log-domain arithmetic helpers.
//!
//! Plateau lengths of the models in this crate reach `exp(exp(20))`, so every
//! sum of the form `Σ exp(a_i)` is carried as its logarithm and only
//! exponentiated at the very end.

/// `ln(Σ exp(x_i))`, factoring out the maximum. Returns `-inf` for an empty
/// input or when every term is `-inf`.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    let sum: f64 = terms.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// `ln(1 - exp(x))` for `x <= 0`, accurate near both ends.
pub fn log1mexp(x: f64) -> f64 {
    debug_assert!(x <= 0.0 || x.is_nan());
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln(exp(a) - exp(b))` for `a >= b`. `b = -inf` is allowed.
pub fn log_diff_exp(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + log1mexp(b - a)
}

/// `ln(1 + exp(u))`; this is `log(1 + t)` for `t = exp(u)`.
pub fn softplus(u: f64) -> f64 {
    if u > 0.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// Streaming `ln Σ exp(x_i)` with rescaling on a new maximum.
#[derive(Debug, Clone, Copy)]
pub struct LogAccumulator {
    max: f64,
    scaled: f64,
}

impl Default for LogAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl LogAccumulator {
    pub fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.scaled += (x - self.max).exp();
        } else {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    /// Current value of the log-sum.
    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}
