// The oscillating counterexample: the Dixmier curve and the normalized heat
// tail curve settle on different constants along the probe scales, and the
// gap is exactly one Γ factor.

use std::fmt::Write;

use singtrace::asymptotics::gap_report;
use singtrace::counterexample::{boundary, CounterexampleModel};
use singtrace::functionals::{dixmier_value, tail_value};
use singtrace::SpectralModel;

fn run_example() -> String {
    let mut out = String::new();
    let model = SpectralModel::counterexample();
    let cx = CounterexampleModel::default();
    writeln!(out, "plateau ends B_k = k + e^k and partial integrals:").unwrap();
    for k in 1..=4 {
        let b = boundary(k);
        writeln!(out, "  k={k}  B_k={b:.6}  log ∫μ = {:.6}", cx.cx_partial_integral(b)).unwrap();
    }
    writeln!(out, "\nprobe values at u_k = e^k + k/2:").unwrap();
    for k in [8u32, 12, 16, 20] {
        let u = (k as f64).exp() + k as f64 / 2.0;
        writeln!(out, "  k={k:2}  dixmier={:.6}  tail={:.6}", dixmier_value(&model, u), tail_value(&model, u)).unwrap();
    }
    writeln!(out, "\ngap reports:").unwrap();
    for q in [0.5, 1.0, 2.0] {
        let r = gap_report(q).expect("probe values settle");
        writeln!(
            out,
            "  q={q}: dixmier → {:.6}, tail → {:.6}, Γ(1+1/q) = {:.6}, gap = {:.6}",
            r.dixmier_limit, r.xi_over_gamma_limit, r.gamma_factor, r.gap
        )
        .unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
