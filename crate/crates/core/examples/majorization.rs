// Hardy–Littlewood majorization of finite spectra compared with
// domination of tail traces.

use std::fmt::Write;

use singtrace::stepfn::{majorizes, rearrange, tail_dominance, tail_equivalence_check};
use singtrace::{LogGrid, SpectralModel};

fn run_example() -> String {
    let mut out = String::new();
    let step = rearrange(&[0.2, 1.0, 0.5, 0.5]).unwrap();
    writeln!(out, "rearranged plateaus of [0.2, 1, 0.5, 0.5]:").unwrap();
    for p in step.plateaus() {
        writeln!(out, "  up to t = {:.3}: value {:.3}", p.u_right.exp(), p.w.exp()).unwrap();
    }

    let grid = LogGrid::new(-3.0, 3.0, 61).unwrap();
    let pairs = [
        ("[1, 0.5] vs [0.75, 0.75]", vec![1.0, 0.5], vec![0.75, 0.75]),
        ("[0.75, 0.75] vs [1, 0.5]", vec![0.75, 0.75], vec![1.0, 0.5]),
        ("[1] vs [0.4, 0.4, 0.4]", vec![1.0], vec![0.4, 0.4, 0.4]),
    ];
    for (label, a, b) in pairs {
        let (a, b) = (SpectralModel::finite(&a).unwrap(), SpectralModel::finite(&b).unwrap());
        let m = majorizes(&a, &b, &grid);
        let t = tail_dominance(&a, &b, &grid);
        writeln!(
            out,
            "{label}: majorizes={} (margin {:+.3}), tail dominance={} (margin {:+.3})",
            m.verdict, m.worst_margin, t.verdict, t.worst_margin
        )
        .unwrap();
        assert_eq!(tail_equivalence_check(&a, &b, &grid), (m.verdict, t.verdict));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
