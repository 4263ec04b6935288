// The raw heat curve of the counterexample is unbounded on each window
// [e^k, e^k + k], while its Cesàro mean stays bounded.

use std::fmt::Write;

use singtrace::functionals::{cesaro, heat_curve};
use singtrace::{LogGrid, SpectralModel};

fn run_example() -> String {
    let mut out = String::new();
    let model = SpectralModel::counterexample();
    let k = 9.0f64;
    let end = k.exp() + k;
    let grid = LogGrid::new(0.0, end, 200_001).unwrap();
    let raw = heat_curve(&model, 1.0, &grid).unwrap();
    let mean = cesaro(&raw).unwrap();
    let window_max = raw.points().filter(|p| p.0 >= k.exp()).map(|p| p.1).fold(f64::MIN, f64::max);
    let mean_max = mean.points().filter(|p| p.0 >= 1.0).map(|p| p.1).fold(f64::MIN, f64::max);
    writeln!(out, "grid [0, e^{k} + {k}] with {} points", grid.count).unwrap();
    writeln!(out, "raw heat curve max on [e^{k}, e^{k} + {k}]: {window_max:.3e}").unwrap();
    writeln!(out, "Cesàro mean max on [1, e^{k} + {k}]: {mean_max:.6}").unwrap();
    for (u, v) in mean.points().step_by(40_000) {
        writeln!(out, "  u={u:10.2}  mean={v:.6}").unwrap();
    }
    out
}

fn main() {
    print!("{}", run_example());
}
