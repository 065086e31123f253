use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hecke(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn dim_and_kostka() {
    assert_eq!(json(&["dim", "--lambda", "3,2"])["dim"], 3);
    assert_eq!(json(&["dim", "--lambda", "2,1", "--mu", "1,2"])["dim"], 2);
    assert_eq!(json(&["kostka", "--mu", "2,1", "--lambda", "1,1,1"])["kostka"], 2);
    assert_eq!(json(&["kostka", "--mu", "3", "--lambda", "1,1,1"])["kostka"], 1);
}

#[test]
fn compositions_csv() {
    let out = hecke(&["compositions", "--n", "2", "--r", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "composition\n\"2,0\"\n\"1,1\"\n\"0,2\"\n");
    assert_eq!(json(&["compositions", "--n", "3", "--r", "3"])["count"], 10);
}

#[test]
fn output_is_deterministic() {
    let a = hecke(&["basis", "codet", "--lambda", "2,1,0", "--mu", "1,1,1"]);
    let b = hecke(&["basis", "codet", "--lambda", "2,1,0", "--mu", "1,1,1"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["dim"], 3);
}

#[test]
fn bases_have_margin_count() {
    for kind in ["xi", "codet", "pbw"] {
        assert_eq!(json(&["basis", kind, "--lambda", "2,1", "--mu", "2,1"])["dim"], 2, "{kind}");
    }
    assert_eq!(json(&["basis", "pbw", "--lambda", "1,1,1", "--form", "PSA-b"])["dim"], 6);
}

#[test]
fn schur_and_u_products() {
    let a = r#"{"n":2,"r":2,"terms":[{"matrix":[[1,1],[0,0]],"coeff_num":1,"coeff_den":1}]}"#;
    let b = r#"{"n":2,"r":2,"terms":[{"matrix":[[0,1],[0,1]],"coeff_num":1,"coeff_den":1}]}"#;
    let p = json(&["mul", a, b]);
    assert_eq!(p["terms"][0]["coeff_num"], 2);
    assert_eq!(p["terms"][0]["matrix"], serde_json::json!([[0, 2], [0, 0]]));

    // e f = f e + H_1 - H_2 in gl_2
    let e = r#"{"n":2,"terms":[{"f":[[0,0],[0,0]],"h":[0,0],"e":[[0,1],[0,0]],"coeff":"1"}]}"#;
    let f = r#"{"n":2,"terms":[{"f":[[0,1],[0,0]],"h":[0,0],"e":[[0,0],[0,0]],"coeff":"1"}]}"#;
    let p = json(&["mul", "--algebra", "u", e, f]);
    assert_eq!(p["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn mul_reads_files() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("one.json");
    std::fs::write(&path, r#"{"n":2,"r":1,"terms":[{"matrix":[[1,0],[0,0]],"coeff_num":1,"coeff_den":1}]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let p = json(&["mul", &arg, &arg]);
    assert_eq!(p["terms"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn udot_commands() {
    let table = json(&["udot", "gl2-table", "--lambda", "2,1", "--degree", "3"]);
    assert_eq!(table["commutative"], true);
    assert_eq!(table["generated_by_b1"], true);
    let basis = json(&["udot", "basis", "--lambda", "-1,1", "--mu", "0,0", "--degree", "3"]);
    assert!(basis["count"].as_u64().unwrap() > 0);
    let psi = json(&["udot", "verify-psi", "--n", "2", "--r", "2"]);
    assert_eq!(psi["passed"], true);
}

#[test]
fn simples() {
    let rep = json(&["simples", "--lambda", "1,1,1"]);
    assert_eq!(rep["entries"].as_array().unwrap().len(), 3);
    assert_eq!(rep["characteristic"], "0");
    let out = hecke(&["simples", "--lambda", "0,0", "--window", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "mu,multiplicity\n\"1,-1\",1\n\"0,0\",1\n");
}

#[test]
fn sym_iso() {
    let v = json(&["sym-iso", "--r", "3"]);
    assert_eq!(v["table_matches"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_suites() {
    for suite in ["gbasis", "idem-lemma", "relations", "gl2"] {
        let v = json(&["verify", suite, "--n", "2", "--r", "2", "--window", "2"]);
        assert_eq!(v["passed"], true, "{suite}");
    }
    let v = json(&["verify", "cellular", "--lambda", "2,1,0"]);
    assert_eq!(v["passed"], true);
    let out = hecke(&["verify", "idem-lemma", "--n", "2", "--r", "2", "--format", "csv"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("id,passed,witness\n"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "nonsense"][..],
        &["dim", "--lambda", "2,x"],
        &["dim", "--lambda", "2,-1"],
        &["dim", "--lambda", "2,1", "--mu", "1,1,1"],
        &["kostka", "--mu", "1,1,1,1", "--lambda", "2,2"],
        &["mul", "not json", "{}"],
        &["basis", "pbw", "--lambda", "1,1", "--form", "nope"],
        &["mul", "--algebra", "u", r#"{"n":2,"terms":[{"f":[[0,0],[1,0]],"h":[0,0],"e":[[0,0],[0,0]],"coeff":"1"}]}"#, "{}"],
        &["frobnicate"],
    ] {
        let out = hecke(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn timing_goes_to_stderr() {
    let out = hecke(&["dim", "--lambda", "1,1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("elapsed"));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("elapsed"));
}

#[test]
fn resource_guard_names_the_bound() {
    let out = hecke(&["verify", "gbasis", "--n", "4", "--r", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("n^r") && err.contains("1000000"), "{err}");
}
