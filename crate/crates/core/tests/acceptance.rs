//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N ... PASS|FAIL` line straight to stdout so the summary shows
//! up in captured test output.

use std::io::Write;
use std::sync::Mutex;

use singtrace::matrixlab::{self, Family};
use singtrace::verify::{run_suite, Suite, VerifyOptions, VerifyResult};

// criteria are timed, so they run one at a time
static SERIAL: Mutex<()> = Mutex::new(());

fn report(n: u32, title: &str, results: &[VerifyResult], budget_ms: Option<u64>) -> bool {
    let runtime = results.iter().map(|r| r.runtime_ms).max().unwrap_or(0);
    let in_time = budget_ms.is_none_or(|b| runtime < b);
    let ok = in_time && results.iter().all(VerifyResult::passed);
    let mut line = format!(
        "criterion {n:2} {title:<28} {} ({runtime} ms{})\n",
        if ok { "PASS" } else { "FAIL" },
        budget_ms.map(|b| format!(", budget {b} ms")).unwrap_or_default()
    );
    for r in results.iter().filter(|r| !r.passed()) {
        line.push_str(&format!(
            "    {}: measured {:e}, expected {:e}, tol {:e} {}\n",
            r.check_name, r.measured, r.expected, r.tolerance, r.detail
        ));
    }
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    ok
}

fn criterion(n: u32, title: &str, suite: Suite, budget_ms: Option<u64>) -> Vec<VerifyResult> {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let results = run_suite(suite, &VerifyOptions::default());
    let ok = report(n, title, &results, budget_ms);
    assert!(ok, "criterion {n} failed: {results:#?}");
    results
}

#[test]
fn criterion_01_counterexample_gap() {
    let results = criterion(1, "counterexample gap", Suite::Counterexample, Some(5_000));
    assert_eq!(results.len(), 12);
}

#[test]
fn criterion_02_envelope() {
    criterion(2, "limit envelopes", Suite::Envelope, Some(10_000));
}

#[test]
fn criterion_03_convergent_models() {
    criterion(3, "convergent models", Suite::Convergent, Some(30_000));
}

#[test]
fn criterion_04_weight_integrals() {
    criterion(4, "weight integrals", Suite::Weights, None);
}

/// The contraction inequality for `t^{1+s}` fails for `s = 2`; the check
/// reports FAIL for that family. The remaining families must pass, and
/// every Loewner failure must come from a trial with `s > 1`.
#[test]
fn criterion_05_matrix_inequalities() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let opts = VerifyOptions::default();
    let results = run_suite(Suite::Matrix, &opts);
    report(5, "matrix inequality suites", &results, Some(60_000));

    for r in &results {
        if !r.check_name.starts_with("matrix.loewner") {
            assert!(r.passed(), "{r:?}");
        }
    }
    let loewner = matrixlab::run_suite(Family::Loewner, opts.trials, opts.dim_max, opts.seed).unwrap();
    let specs: Vec<_> = (0..opts.trials as u64)
        .map(|i| matrixlab::trial_spec(opts.seed, i, opts.dim_max))
        .collect();
    for seed in &loewner.failures {
        let spec = specs.iter().find(|t| t.seed == *seed).unwrap();
        assert!(spec.s > 1.0, "failure at s = {}", spec.s);
    }
    let s_large = specs.iter().filter(|t| t.s > 1.0).count();
    assert!(loewner.failures.len() <= s_large);
}

#[test]
fn criterion_06_majorization_equivalence() {
    criterion(6, "majorization equivalence", Suite::Majorization, Some(10_000));
}

#[test]
fn criterion_07_pi_functional() {
    criterion(7, "window functional", Suite::Pi, None);
}

#[test]
fn criterion_08_boundedness_dichotomy() {
    criterion(8, "boundedness dichotomy", Suite::Dichotomy, None);
}

#[test]
fn criterion_09_karamata() {
    criterion(9, "karamata comparison", Suite::Karamata, None);
}

#[test]
fn criterion_10_oracle_equivalence() {
    criterion(10, "oracle equivalence", Suite::Oracles, None);
}
