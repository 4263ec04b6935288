use std::process::Command;

use singtrace::cli::CurveDocument;
use singtrace::verify::VerifyResult;

fn singtrace(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_singtrace")).args(args).output().unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn curve_csv_rows() {
    let o = singtrace(&["curve", "--model", "harmonic", "--functional", "zeta", "--umin", "1", "--umax", "10", "--points", "901"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 902);
    let first: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(first[0], 1.0);
    assert_eq!(first[1], 1f64.exp());
}

#[test]
fn json_curve_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heat.json");
    let o = singtrace(&[
        "curve", "--model", "counterexample", "--functional", "heat", "--q", "2", "--umin", "0", "--umax", "60",
        "--points", "121", "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: CurveDocument = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let model = singtrace::SpectralModel::counterexample();
    for (u, v) in doc.grid.points().zip(&doc.values) {
        assert_eq!(v.to_bits(), singtrace::functionals::heat_value(&model, 2.0, u).unwrap().to_bits());
    }
    assert_eq!(doc.metadata.functional, "heat");
}

#[test]
fn model_file_is_loaded() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"{"kind":"finite","values":[1,0.5,0.5]}"#).unwrap();
    let o = singtrace(&[
        "curve", "--model", path.to_str().unwrap(), "--functional", "lidskii", "--umin", "0.5", "--umax", "2", "--points",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    std::fs::write(&path, r#"{"kind":"explicit","plateaus":[[0,0],[-1,1]]}"#).unwrap();
    let o = singtrace(&["curve", "--model", path.to_str().unwrap(), "--functional", "dixmier"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("plateau 1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(singtrace(&["curve", "--model", "/nonexistent.json", "--functional", "zeta"]).status.code(), Some(2));
    assert_eq!(singtrace(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(singtrace(&["curve", "--model", "harmonic"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_singtrace"))
        .args(["verify", "--suite", "weights"])
        .env("SINGTRACE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_counterexample_q1() {
    let o = singtrace(&["verify", "--suite", "counterexample", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let results: Vec<VerifyResult> = serde_json::from_str(&stdout(&o)).unwrap();
    let d = results.iter().find(|r| r.check_name.contains("dixmier_limit")).unwrap();
    assert!(d.passed());
    assert!((d.expected - 0.581_977).abs() < 1e-6);
    assert_eq!(d.tolerance, 1e-4);
}

#[test]
fn matrix_suite_reports_each_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let o = singtrace(&["matrix-suite", "--family", "all", "--trials", "500", "--seed", "7", "--output", path.to_str().unwrap()]);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        let passed = r["failures"].as_array().unwrap().is_empty();
        assert_eq!(passed, r["family"] != "loewner", "{r}");
    }
    assert_eq!(o.status.code(), Some(1));

    let o = singtrace(&["matrix-suite", "--family", "convex", "--trials", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(singtrace(&["matrix-suite", "--family", "nope"]).status.code(), Some(2));
}

#[test]
fn counterexample_writes_probe_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("probes.csv");
    let o = singtrace(&["counterexample", "--q", "2", "--probe-table", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((report["gamma_factor"].as_f64().unwrap() - 0.886_227).abs() < 1e-6);
    let csv = std::fs::read_to_string(&table).unwrap();
    assert!(csv.starts_with("k,u,dixmier,tail\n"));
    assert_eq!(csv.lines().count(), 8);

    let o = singtrace(&["counterexample", "--k-min", "4", "--k-max", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("k,u,dixmier,tail"));
    let o = singtrace(&["counterexample", "--k-min", "14", "--k-max", "16"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn majorize_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"kind":"finite","values":[1,0.5]}"#).unwrap();
    std::fs::write(&b, r#"{"kind":"finite","values":[0.75,0.75]}"#).unwrap();
    let o = singtrace(&["majorize", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap(), "--umin", "-3", "--umax", "3", "--points", "61"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["majorization"]["verdict"], true);
    assert_eq!(v["agree"], true);
}
