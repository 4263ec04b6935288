//! Runs every example through its `run_example` entry point.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));
            pub fn output() -> String {
                run_example()
            }
        }
    };
}

example!(counterexample_gap);
example!(limit_envelopes);
example!(convergent_models);
example!(heat_dichotomy);
example!(majorization);
example!(matrix_inequalities);
example!(weight_integrals_karamata);
example!(pi_functional);
example!(model_files);

#[test]
fn counterexample_gap_example() {
    let out = counterexample_gap::output();
    assert!(out.contains("q=1: dixmier → 0.5820"));
    assert_eq!(out.matches("gap =").count(), 3);
}

#[test]
fn limit_envelopes_example() {
    let out = limit_envelopes::output();
    assert!(out.contains("counterexample Tail: inf ≈ 0.5819"));
    assert!(out.contains("extrapolated 2.000000000000"));
}

#[test]
fn convergent_models_example() {
    let out = convergent_models::output();
    assert!(out.contains("Γ(3/2) = 0.886227"));
    assert!(out.contains("power tail"));
}

#[test]
fn heat_dichotomy_example() {
    let out = heat_dichotomy::output();
    assert!(out.contains("raw heat curve max"));
    assert!(out.contains("Cesàro mean max on [1, e^9 + 9]: 1.5"));
}

#[test]
fn majorization_example() {
    let out = majorization::output();
    assert!(out.contains("[1, 0.5] vs [0.75, 0.75]: majorizes=true"));
    assert!(out.contains("[0.75, 0.75] vs [1, 0.5]: majorizes=false"));
}

#[test]
fn matrix_inequalities_example() {
    let out = matrix_inequalities::output();
    for family in ["power", "convex", "sandwich"] {
        let line = out.lines().find(|l| l.starts_with(family)).unwrap();
        assert!(line.ends_with("failures=0"), "{line}");
    }
}

#[test]
fn weight_integrals_karamata_example() {
    let out = weight_integrals_karamata::output();
    assert!(out.contains("heatexp:2: ∫ = 0.886226925453"));
    assert!(out.contains("squarecut: ∫ = 1.000000000000"));
}

#[test]
fn pi_functional_example() {
    let out = pi_functional::output();
    assert!(out.contains("k= 8  full windows 1.0000  unit windows 0.1250"));
}

#[test]
fn model_files_example() {
    let out = model_files::output();
    assert!(out.contains("rejected"));
    assert!(out.contains("JSON round trip exact: true"));
}
