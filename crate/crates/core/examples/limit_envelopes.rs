// Limit-point sets of bounded curves: envelopes over exponential windows
// and Aitken-accelerated limits along regular subsequences.

use std::fmt::Write;

use singtrace::asymptotics::{exponential_windows, subsequence_limit, window_envelope, CurveKind, ModelCurve};
use singtrace::SpectralModel;

fn run_example() -> String {
    let mut out = String::new();
    let cx = SpectralModel::counterexample();
    let windows = exponential_windows(8..=14);
    for kind in [CurveKind::Tail, CurveKind::Dixmier] {
        let est = window_envelope(&ModelCurve::new(&cx, kind), &windows).unwrap();
        writeln!(out, "counterexample {kind:?}: inf ≈ {:.5}, sup ≈ {:.5}", est.liminf_est, est.limsup_est).unwrap();
    }
    let h = SpectralModel::Harmonic;
    let est = window_envelope(&ModelCurve::new(&h, CurveKind::Dixmier), &exponential_windows(8..=12)).unwrap();
    writeln!(out, "harmonic Dixmier: inf ≈ {:.5}, sup ≈ {:.5}", est.liminf_est, est.limsup_est).unwrap();

    let zeta = subsequence_limit(&ModelCurve::new(&h, CurveKind::Zeta), &[6.0, 8.0, 10.0, 12.0, 14.0], 1e-3).unwrap();
    writeln!(out, "harmonic ζ along u = 6..14: converged={}, limit ≈ {:.6}", zeta.converged, zeta.limit()).unwrap();

    let geometric = |u: f64| 2.0 + 3.0 * (-0.7 * u).exp();
    let est = subsequence_limit(&geometric, &[1.0, 2.0, 3.0, 4.0, 5.0], 1.0).unwrap();
    writeln!(out, "2 + 3e^(-0.7u): last probe {:.6}, extrapolated {:.12}", est.probes[4].1, est.limit()).unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
