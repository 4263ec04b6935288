// Reading and writing model descriptions, and sampling curves the way the
// command line does.

use std::fmt::Write;

use singtrace::cli::{build_curve, curve_csv, CurveDocument};
use singtrace::model_io::{parse_model, resolve_model, ModelSpec};
use singtrace::LogGrid;

fn run_example() -> String {
    let mut out = String::new();
    let docs = [
        r#"{"kind":"harmonic"}"#,
        r#"{"kind":"finite","values":[1,0.5,0.5]}"#,
        r#"{"kind":"power","c":1.5,"p":1}"#,
        r#"{"kind":"explicit","plateaus":[[0,0],[-1,1]]}"#,
    ];
    for doc in docs {
        match parse_model(doc) {
            Ok(m) => writeln!(out, "{doc} → {} ({})", m.kind_name(), serde_json::to_string(&ModelSpec::from_model(&m)).unwrap())
                .unwrap(),
            Err(e) => writeln!(out, "{doc} → rejected: {e}").unwrap(),
        }
    }
    let model = resolve_model("power:1:1").unwrap();
    let grid = LogGrid::new(0.0, 4.0, 5).unwrap();
    let curve = build_curve(&model, "cesaro-of:dixmier", 1.0, None, &grid).unwrap();
    write!(out, "\n{}", curve_csv(&curve)).unwrap();
    let json = serde_json::to_string(&CurveDocument::from_curve(&curve, "power:1:1")).unwrap();
    let back: CurveDocument = serde_json::from_str(&json).unwrap();
    writeln!(out, "JSON round trip exact: {}", back.values == curve.values).unwrap();
    out
}

fn main() {
    print!("{}", run_example());
}
