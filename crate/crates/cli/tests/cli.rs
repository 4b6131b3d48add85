use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn jdlength(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jdlength"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let mut all = args.to_vec();
    all.extend(["--out", "json"]);
    let out = jdlength(&all, stdin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn spectrum(v: &Value) -> Vec<u64> {
    v["report"]["spectrum"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn toric_f2_json() {
    let v = json(&["toric", "--preset", "f2"], "");
    assert_eq!(v["schema_version"], 1);
    let s = spectrum(&v);
    assert!(s.contains(&4) && s.contains(&5));
    assert_eq!(v["report"]["jd_property"], "FAILS");
}

#[test]
fn quiver_a3() {
    let v = json(&["quiver", "--dynkin", "A3"], "");
    assert_eq!(spectrum(&v), vec![3]);
    assert_eq!(v["chains"], 16);
    assert_eq!(v["thick_subcategories"], 14);
    assert_eq!(v["report"]["jd_property"], "HOLDS");
}

#[test]
fn algebra_lambda_family() {
    let v = json(&["algebra", "--family", "lambda:1,2,0"], "");
    let s = spectrum(&v);
    assert!(s.contains(&2) && s.contains(&3));
}

#[test]
fn asserted_claims_carry_citations() {
    let v = json(&["algebra", "--family", "kronecker:3"], "");
    for c in v["report"]["claims"].as_array().unwrap() {
        assert!(!c["citation"].as_str().unwrap().is_empty());
    }
}

#[test]
fn stdin_documents() {
    let poset = r#"{"elements": ["a", "b", "c"], "lt": [["a", "b"]]}"#;
    assert_eq!(spectrum(&json(&["poset"], poset)), vec![3]);
    let fan = r#"{"rays": [[1,0],[0,1],[-1,3],[0,-1]]}"#;
    let v = json(&["toric"], fan);
    assert_eq!(v["geometry"]["blocks"][0]["m"], 3);
    let alg = r#"{"vertices": 2, "arrows": [[0, 1]], "relations": []}"#;
    let v = json(&["algebra"], alg);
    assert_eq!(v["simples_exceptional"], true);
    assert_eq!(spectrum(&v), vec![2]);
}

#[test]
fn ring_reports() {
    assert_eq!(spectrum(&json(&["ring", "--artinian", "4"], "")), vec![4]);
    assert_eq!(spectrum(&json(&["ring", "--dual-numbers"], "")), vec![2]);
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(jdlength(&["toric", "--preset", "f9"], "").status.code(), Some(2));
    assert_eq!(jdlength(&["toric"], r#"{"rays": [[2,0],[0,1],[-1,-1]]}"#).status.code(), Some(2));
    assert_eq!(jdlength(&["poset"], "not json").status.code(), Some(2));
    assert_eq!(jdlength(&["quiver", "--dynkin", "A3", "--field", "fp:4"], "").status.code(), Some(2));
    assert_eq!(jdlength(&["poset", "--chain", "20", "--max-poset", "8"], "").status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = jdlength(&["toric", "--random", "7", "--seed", "11", "--out", "json"], "");
    let b = jdlength(&["toric", "--random", "7", "--seed", "11", "--out", "json"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dot_outputs() {
    let out = jdlength(&["quiver", "--dynkin", "A2", "--out", "dot"], "");
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.matches("->").count(), 6);
    let out = jdlength(&["poset", "--chain", "3", "--out", "dot"], "");
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("->").count(), 3);
    let out = jdlength(&["toric", "--preset", "f2", "--out", "dot"], "");
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("[label=").count(), 4);
}

#[test]
fn prime_field_matches_rational() {
    let q = json(&["algebra", "--family", "kronecker:3"], "");
    let p = json(&["algebra", "--family", "kronecker:3", "--field", "fp:32003"], "");
    assert_eq!(q["report"]["spectrum"], p["report"]["spectrum"]);
}

#[test]
fn uncertified_algebra_is_rejected() {
    // Λ(1,2,0) in vertex order: S_1 is 2-sphere-like, not exceptional.
    let alg = r#"{"vertices": 2, "arrows": [[0, 1], [1, 0]], "relations": [[1, 0]]}"#;
    assert_eq!(jdlength(&["algebra"], alg).status.code(), Some(2));
}
