// The window functional averaging x over [e^k, e^k + k], applied to
// indicators of double-exponential windows.

use std::fmt::Write;

use singtrace::functionals::{double_exponential_windows, pi_functional, pi_window_value, PiArgument};

fn run_example() -> String {
    let mut out = String::new();
    let full = PiArgument::Indicator(double_exponential_windows(30, |j| j as f64));
    let unit = PiArgument::Indicator(double_exponential_windows(30, |_| 1.0));
    let constant = PiArgument::Constant(0.3);
    for k in 8..=12 {
        writeln!(
            out,
            "k={k:2}  full windows {:.4}  unit windows {:.4} (1/k = {:.4})  constant {:.4}",
            pi_window_value(&full, k),
            pi_window_value(&unit, k),
            1.0 / k as f64,
            pi_window_value(&constant, k)
        )
        .unwrap();
    }
    let est = pi_functional(&unit, 8..=12).unwrap();
    writeln!(out, "unit windows: limsup estimate {:.4}", est.limsup_est).unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
