// Weight integrals ∫ f(s)/s² ds of test functions, and the Karamata
// comparison between Laplace-type transforms and scaled arguments.

use std::fmt::Write;

use singtrace::functionals::{gamma_factor, karamata_compare, weight_integral, Beta, TestFunction};
use singtrace::{LogGrid, SpectralModel};

fn run_example() -> String {
    let mut out = String::new();
    for q in [0.5, 1.0, 2.0, 3.0] {
        let f = TestFunction::heat_exp(q).unwrap();
        writeln!(out, "{}: ∫ = {:.12}, Γ(1+1/q) = {:.12}", f.descriptor(), weight_integral(&f).unwrap(), gamma_factor(q))
            .unwrap();
    }
    let sq = TestFunction::square_cut();
    writeln!(out, "{}: ∫ = {:.12}", sq.descriptor(), weight_integral(&sq).unwrap()).unwrap();
    match weight_integral(&TestFunction::tail_indicator()) {
        Ok(v) => writeln!(out, "tail indicator: {v}").unwrap(),
        Err(e) => writeln!(out, "tail indicator: {e}").unwrap(),
    }

    let grid = LogGrid::new(0.0, 8.0, 5).unwrap();
    for q in [1.0, 2.0] {
        let k = karamata_compare(&Beta::Linear { slope: 1.0 }, q, &grid).unwrap();
        writeln!(out, "β(u)=u, q={q}: max difference {:.2e}", k.max_difference()).unwrap();
    }
    let h = SpectralModel::Harmonic;
    let grid = LogGrid::new(4.0, 10.0, 4).unwrap();
    let k = karamata_compare(&Beta::DistributionOf(&h), 1.0, &grid).unwrap();
    for ((u, l), s) in k.laplace.points().zip(&k.scaled.values) {
        writeln!(out, "harmonic distribution, t=e^{u:.0}: laplace {l:.6}, scaled {s:.6}").unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
