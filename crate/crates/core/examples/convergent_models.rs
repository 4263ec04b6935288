// Models whose curves converge: the harmonic sequence and power tails.
// Every functional agrees with the Dixmier value times its Γ factor.

use std::fmt::Write;

use singtrace::functionals::{
    dixmier_value, gamma_factor, generalized_heat_value, heat_value, lidskii_value, weight_integral, zeta_value,
    TestFunction,
};
use singtrace::SpectralModel;

fn run_example() -> String {
    let mut out = String::new();
    let h = SpectralModel::Harmonic;
    writeln!(out, "harmonic sequence 1/n").unwrap();
    writeln!(out, "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10}", "t", "zeta", "heat q=1", "heat q=2", "dixmier", "lidskii").unwrap();
    for t in [1e2f64, 1e3, 1e4] {
        let u = t.ln();
        writeln!(
            out,
            "{t:>8.0e} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            zeta_value(&h, u).unwrap(),
            heat_value(&h, 1.0, u).unwrap(),
            heat_value(&h, 2.0, u).unwrap(),
            dixmier_value(&h, u),
            lidskii_value(&h, u).unwrap()
        )
        .unwrap();
    }
    writeln!(out, "Γ(3/2) = {:.6}", gamma_factor(2.0)).unwrap();

    let square = TestFunction::square_cut();
    let u = 1e4f64.ln();
    writeln!(
        out,
        "square cut at t=1e4: {:.6} vs weight integral {:.6}",
        generalized_heat_value(&h, &square, u).unwrap(),
        weight_integral(&square).unwrap()
    )
    .unwrap();

    let p = SpectralModel::power_tail(2.0, 1.0).unwrap();
    writeln!(out, "\npower tail μ(t) = 2/(1+t)").unwrap();
    for t in [1e2f64, 1e4, 1e6] {
        writeln!(out, "  t={t:.0e}: dixmier {:.6}, zeta {:.6}", dixmier_value(&p, t.ln()), zeta_value(&p, t.ln()).unwrap())
            .unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
