// Randomized trace and operator inequalities on small real symmetric
// matrices, reproducible from one base seed.

use std::fmt::Write;

use singtrace::matrixlab::{loewner_cps_check, run_suite, Family, HermitianMatrix};

fn run_example() -> String {
    let mut out = String::new();
    for family in Family::ALL {
        let r = run_suite(family, 200, 6, 7).unwrap();
        writeln!(
            out,
            "{:9} trials={} worst relative margin={:+.3e} failures={}",
            family.name(),
            r.trials,
            r.worst_margin,
            r.failures.len()
        )
        .unwrap();
    }
    // the contraction inequality needs t^{1+s} operator convex, i.e. s ≤ 1
    let a = HermitianMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 1.0]]).unwrap();
    let b = HermitianMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
    for s in [0.5, 1.0, 2.0] {
        let r = loewner_cps_check(&a, &b, s).unwrap();
        writeln!(out, "projection B, s={s}: margin {:+.4}", r.worst_margin).unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
