//! End-to-end runs of the binary against the sample data files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("data")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eiscomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_models() {
    for model in ["imaginary_quadratic.toml", "s3.toml", "tr_cubic.toml"] {
        let out = run(&["validate", "--model", &data(model)]);
        assert!(out.status.success(), "{model}: {}", stdout(&out));
    }
}

#[test]
fn validate_reports_classification() {
    let out = run(&["validate", "--model", &data("s3.toml"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "eiscomb/1");
    assert_eq!(doc["results"]["classification"], "CM");
    let out = run(&["validate", "--model", &data("tr_cubic.toml"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"]["classification"], "TR");
}

#[test]
fn critset_hecke_example() {
    // (p, q) = (3, 1): critical set {1−p, …, −q} = {−2, −1}
    let out = run(&[
        "critset",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_hecke_p3_q1.toml"),
        "--mu-prime",
        &data("mu_zero_gl1.toml"),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let points = doc["results"]["critical_set"]["points"].as_array().unwrap();
    let points: Vec<&str> = points.iter().map(|p| p.as_str().unwrap()).collect();
    assert_eq!(points, vec!["-2", "-1"]);
}

#[test]
fn critset_empty_for_equal_gl1_weights() {
    let out = run(&[
        "critset",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_zero_gl1.toml"),
        "--mu-prime",
        &data("mu_zero_gl1.toml"),
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"]["critical_set"]["empty"], true);
    assert_eq!(doc["results"]["cuspidal_width"], 0);
}

#[test]
fn kostant_reports_the_unique_representative() {
    // p > p* branch: w = (1, s*) of length 1
    let out = run(&[
        "kostant",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_gl1_p0.toml"),
        "--mu-prime",
        &data("mu_prime_gl1_pstar.toml"),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"]["found"], true);
    assert_eq!(doc["results"]["oracle_count"], 1);
    assert_eq!(doc["results"]["oracle_agreement"], true);
    let rep = doc["results"]["representative"].as_array().unwrap();
    assert_eq!(rep[0]["length"], 0);
    assert_eq!(rep[1]["length"], 1);
}

#[test]
fn kostant_degenerate_case_reports_absence() {
    // p = 0, p* = −1: no balanced dominant representative
    let dir = tempfile::tempdir().unwrap();
    let mu = dir.path().join("mu.toml");
    let mup = dir.path().join("mup.toml");
    std::fs::write(&mu, "n = 1\n[components]\neta = [1]\netabar = [0]\n").unwrap();
    std::fs::write(&mup, "n = 1\n[components]\neta = [1]\netabar = [1]\n").unwrap();
    let out = run(&[
        "kostant",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        mu.to_str().unwrap(),
        "--mu-prime",
        mup.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"]["found"], false);
    assert_eq!(
        doc["results"]["message"],
        "no balanced dominant representative"
    );
    assert_eq!(doc["results"]["oracle_count"], 0);
}

#[test]
fn kostant_budget_exhaustion_exits_4() {
    let out = run(&[
        "kostant",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_gl1_p0.toml"),
        "--mu-prime",
        &data("mu_prime_gl1_pstar.toml"),
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn gamma_symbolic_and_numeric() {
    let out = run(&[
        "gamma",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_gl2.toml"),
        "--mu-prime",
        &data("mu_prime_gl1.toml"),
        "--m",
        "11/2",
        "--gl2-m",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"]["schedule_agrees"], true);
    // π-exponent r·n·n' = 2
    assert_eq!(doc["results"]["pi_exponent"], "2");
    assert_eq!(doc["results"]["gl2_numeric"]["ok"], true);
    let rel = doc["results"]["gl2_numeric"]["relative_error"].as_f64().unwrap();
    assert!(rel < 1e-6);
}

#[test]
fn gamma_non_critical_names_triple() {
    let out = run(&[
        "gamma",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_gl2.toml"),
        "--mu-prime",
        &data("mu_prime_gl1.toml"),
        "--m",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("not critical"), "{err}");
    assert!(err.contains("i="), "{err}");
}

#[test]
fn sign_s3_full_table() {
    let out = run(&[
        "sign",
        "--model",
        &data("s3.toml"),
        "--mu",
        &data("mu_s3_gl1.toml"),
        "--mu-prime",
        &data("mu_prime_s3_zero.toml"),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["results"]["signatures"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row["ok"], true, "{row}");
        assert_eq!(row["epsilon_direct"], row["epsilon_formula"]);
    }
    // identity element gives +1
    let id = rows.iter().find(|r| r["galois"] == "e").unwrap();
    assert_eq!(id["epsilon_direct"], 1);
}

#[test]
fn sign_tr_model_all_ones() {
    let out = run(&[
        "sign",
        "--model",
        &data("tr_cubic.toml"),
        "--mu",
        &data("mu_tr_gl1.toml"),
        "--mu-prime",
        &data("mu_prime_tr_gl2.toml"),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in doc["results"]["signatures"].as_array().unwrap() {
        assert_eq!(row["epsilon_direct"], 1, "{row}");
        assert_eq!(row["epsilon_formula"], 1, "{row}");
        assert_eq!(row["ok"], true);
    }
}

#[test]
fn sweep_comb_small_box_clean() {
    let out = run(&[
        "sweep", "--suite", "comb", "--n", "1", "--n-prime", "1", "--lo", "-3", "--hi", "3",
        "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["fail"], 0);
    assert!(doc["pass"].as_u64().unwrap() > 0);
}

#[test]
fn sweep_fault_injection_exits_3() {
    let out = run(&[
        "sweep",
        "--suite",
        "comb",
        "--n",
        "1",
        "--n-prime",
        "1",
        "--lo",
        "-3",
        "--hi",
        "3",
        "--inject-fault",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_reports_are_byte_stable() {
    let args = [
        "critset",
        "--model",
        &data("imaginary_quadratic.toml"),
        "--mu",
        &data("mu_hecke_p3_q1.toml"),
        "--mu-prime",
        &data("mu_zero_gl1.toml"),
        "--format",
        "json",
    ];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second);
}

#[test]
fn invalid_model_exits_2_and_names_element() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        r#"
embeddings = ["a", "b"]
distinguished_conjugation = 0
distinguished = ["a"]
[[conjugations]]
pairs = []
"#,
    )
    .unwrap();
    let out = run(&["validate", "--model", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = doc["results"]["checks"].as_array().unwrap();
    let failing = checks.iter().find(|c| c["ok"] == false).unwrap();
    assert!(
        failing["detail"].as_str().unwrap().contains("fixed-point in conjugation"),
        "{failing}"
    );
}

#[test]
fn s3_data_file_matches_builtin_model() {
    let text = std::fs::read_to_string(data("s3.toml")).unwrap();
    let parsed = eiscomb_core::input::parse_model(&text).unwrap();
    let builtin = eiscomb_core::fixtures::s3_model();
    assert_eq!(parsed.model, builtin);
    for g in &parsed.galois {
        let expected = eiscomb_core::fixtures::s3_galois(&g.name);
        assert_eq!(g.perm, expected.perm, "galois element {}", g.name);
    }
}
