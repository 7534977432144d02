use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_classdual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn classes_s3() {
    let v = json(&["classes", "--group", "S3"]);
    assert_eq!(v["command"], "classes");
    assert_eq!(v["group"], "S3");
    assert_eq!(v["inputs"]["order"], 6);
    assert_eq!(v["inputs"]["table"]["source"], "computed");
    assert_eq!(ints(&v["results"]["sizes"]), vec![1, 2, 3]);
}

#[test]
fn defect_s3_both_sides_true() {
    let v = json(&["defect", "--group", "S3", "-p", "3", "-n", "2"]);
    assert_eq!(v["verdicts"]["character_side"], true);
    assert_eq!(v["verdicts"]["direct_side"], true);
    assert_eq!(ints(&v["results"]["values"]), vec![11, 7, 9]);
}

#[test]
fn counterexample_s3_divisible_by_nine() {
    let v = json(&["counterexample", "--group", "S3", "-p", "3"]);
    let gammas = ints(&v["results"]["gammas"]);
    assert_eq!(gammas, vec![153, 153, 279]);
    assert!(gammas.iter().all(|g| g % 9 == 0));
    assert_eq!(v["verdicts"]["all_divisible"], true);
}

#[test]
fn alt_normalizer_d12_report() {
    let v = json(&["counterexample", "--group", "D12", "-p", "3", "--alt-normalizer"]);
    let alt = &v["results"]["alt_normalizer"];
    assert_eq!(alt["group_p_part"], 3);
    assert_eq!(alt["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn blocks_and_pelements() {
    let v = json(&["blocks", "--group", "S3", "-p", "3"]);
    assert_eq!(v["results"]["members"], serde_json::json!([true, true, true]));
    let v = json(&["blocks", "--group", "C2", "-p", "3"]);
    assert_eq!(v["results"]["members"], serde_json::json!([true, false]));
    let v = json(&["pelements", "--group", "A4", "-p", "2"]);
    assert_eq!(v["verdicts"]["congruence_matches_order"], true);
}

#[test]
fn recover_round_trip() {
    let v = json(&["recover", "--group", "S4"]);
    assert_eq!(v["verdicts"]["matches_enumeration"], true);
    assert_eq!(v["results"]["recovered"], v["results"]["enumerated"]);
    let v = json(&["recover", "--group", "Q8", "--real"]);
    assert_eq!(v["verdicts"]["matches_enumeration"], true);
}

#[test]
fn saved_table_is_reused_with_digest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a4.json");
    let p = path.to_str().unwrap();
    json(&["table", "--group", "A4", "--save", p]);
    let v = json(&["gamma", "--group", "A4", "--table", p, "-n", "3"]);
    assert_eq!(v["inputs"]["table"]["source"], "file");
    assert_eq!(v["inputs"]["table"]["sha256"].as_str().unwrap().len(), 64);
    let computed = json(&["gamma", "--group", "A4", "-n", "3"]);
    assert_eq!(v["results"], computed["results"]);
    // a table for another group is rejected
    let out = run(&["gamma", "--group", "S4", "--table", p]);
    assert!(!out.status.success());
}

#[test]
fn spec_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d10.json");
    std::fs::write(&path, r#"{"name": "D10", "degree": 5, "generators": ["(1 2 3 4 5)", "(2 5)(3 4)"]}"#).unwrap();
    let v = json(&["classes", "--spec", path.to_str().unwrap()]);
    assert_eq!(v["group"], "D10");
    assert_eq!(ints(&v["results"]["sizes"]), vec![1, 2, 2, 5]);
}

#[test]
fn distinct_exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name": "bad", "degree": 3, "generators": ["(1 4)"]}"#).unwrap();
    let unknown = code(&["classes", "--group", "M11"]);
    let malformed = code(&["classes", "--spec", bad.to_str().unwrap()]);
    let not_prime = code(&["defect", "--group", "S3", "-p", "6"]);
    let cap = code(&["classes", "--group", "A5", "--cap", "20"]);
    let codes = [unknown, malformed, not_prime, cap];
    for (i, a) in codes.iter().enumerate() {
        assert_ne!(*a, 0);
        for b in &codes[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify"]);
    let b = run(&["verify"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["results"]["failed"], 0);
}

#[test]
fn human_format() {
    let out = run(&["table", "--group", "S3", "--format", "human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("X.3  2  -1  0"), "{text}");
}
