#![cfg(feature = "cli")]

use std::path::PathBuf;

use quivinj::cli::{run, EXIT_DISAGREEMENT, EXIT_INVALID, EXIT_OK};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quivinj").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn check_json_has_the_stable_keys() {
    let (code, out, _) = call(&["check", &fixture("fig1.quiver"), "--condition", "all", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["presentation", "conditions", "final", "nakayama_permutation", "classification", "notes"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(v["final"], Value::Bool(false));
    assert_eq!(v["conditions"]["c1_oracle"], Value::Bool(false));
    assert_eq!(v["nakayama_permutation"], Value::Null);
    assert_eq!(v["classification"]["kind"], "not_self_injective_shape");
}

#[test]
fn check_nak2_and_loop() {
    let (code, out, _) = call(&["check", &fixture("nak2.quiver"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["final"], Value::Bool(true));
    assert_eq!(v["nakayama_permutation"], serde_json::json!([2, 1]));

    let (code, out, _) = call(&["check", &fixture("loop2.quiver"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classification"], serde_json::json!({"kind": "cyclic", "n": 1, "l": 2}));
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn single_conditions() {
    for c in ["1", "2", "3", "4"] {
        let (code, out, _) = call(&["check", &fixture("a2.quiver"), "--condition", c, "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["final"], Value::Bool(false), "condition {c}");
    }
    let (code, _, err) = call(&["check", &fixture("a2.quiver"), "--condition", "1", "--no-oracle"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("--no-oracle"));
    let (code, _, _) = call(&["check", &fixture("a2.quiver"), "--condition", "5"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn tree_dot() {
    let (code, out, _) = call(&["tree", &fixture("fig1.quiver"), "--vertex", "1", "--dot"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("digraph \"T_1\" {"));
    assert_eq!(out.matches("[label=\"(").count(), 6 + 5);
    assert!(out.contains("n0 [label=\"(*_1, 1)\"]"));
}

#[test]
fn basis_socle_hom_classify() {
    let (code, out, _) = call(&["basis", &fixture("fig1.quiver"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 10);
    assert_eq!(v["projective_dimension_vectors"][0], serde_json::json!([1, 2, 3]));

    let (code, out, _) = call(&["socle", &fixture("fig1.quiver"), "--vertex", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "soc P(1) = 3 S(3)");

    let (code, out, _) = call(&["hom", &fixture("fig1.quiver"), "--from", "S", "3", "--to", "P", "1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["oracle_dimension"], 3);

    let (code, out, _) = call(&["hom", &fixture("fig1.quiver"), "--from", "P", "2", "--to", "P", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("dim Hom(P(2), P(1)) = 2"));

    let (code, _, _) = call(&["hom", &fixture("fig1.quiver"), "--from", "I", "2", "--to", "P", "1"]);
    assert_eq!(code, EXIT_INVALID);

    let (code, out, _) = call(&["classify", &fixture("nak2.quiver")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "cyclic C_2 with paths of length 2 killed");
}

#[test]
fn invalid_inputs_exit_one() {
    let (code, _, err) = call(&["basis", &fixture("kx.quiver")]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("infinite-dimensional"));

    let (code, _, err) = call(&["tree", &fixture("fig1.quiver"), "--vertex", "4"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("unknown vertex 4"));

    let (code, _, _) = call(&["basis", "/nonexistent/file.quiver"]);
    assert_eq!(code, EXIT_INVALID);

    let (code, _, _) = call(&["enumerate", "--max-vertices", "0", "--max-arrows", "1", "--max-rel-len", "2", "--max-rels", "1"]);
    assert_eq!(code, EXIT_INVALID);

    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn enumerate_and_verify() {
    let (code, out, _) = call(&["enumerate", "--max-vertices", "1", "--max-arrows", "1", "--max-rel-len", "2", "--max-rels", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("2 presentations"));

    let args = ["enumerate", "--max-vertices", "2", "--max-arrows", "2", "--max-rel-len", "2", "--max-rels", "2", "--verify", "--json"];
    let (code, one, _) = call(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(code, EXIT_OK);
    let (_, four, _) = call(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one, four);
    let v: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["instances_valid"], 10);
    assert_eq!(v["agreements"], 10);
    assert!(v.get("elapsed").is_none());
    assert_ne!(EXIT_DISAGREEMENT, EXIT_OK);
}
