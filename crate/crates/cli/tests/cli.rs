use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const CONE: &str = r#"{"format":1,"kind":"monoid","ambient":{"rank":2},"generators":[[1,0],[1,2],[1,1]]}"#;
const PLANE_IDEAL: &str = r#"{"format":1,"kind":"monoid","ambient":{"rank":2},"generators":[[1,0],[0,1]],"ideal":["x^2","xy"]}"#;
const AXES: &str = r#"{"format":1,"kind":"monoid","ambient":{"rank":2},"generators":[[1,0],[0,1]],"ideal":[[1,1]]}"#;
const P1: &str = r#"{"format":1,"kind":"fan","dim":1,"rays":[[1],[-1]],"cones":[[],[0],[1]]}"#;
const P2: &str = r#"{"format":1,"kind":"fan","dim":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[],[0],[1],[2],[0,1],[1,2],[0,2]]}"#;
const P1_SCRIPT: &str = r#"{"format":1,"kind":"scheme-build-script",
  "charts":[{"ambient":{"rank":1},"generators":[[1]]},{"ambient":{"rank":1},"generators":[[-1]]}],
  "gluing":[{"charts":[0,1],"invert":["x"]}]}"#;

fn mscheme(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mscheme"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("stdin").write_all(stdin.as_bytes()).expect("write stdin");
    child.wait_with_output().expect("binary finishes")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn class_group_of_the_quadric_cone() {
    let out = mscheme(&["class-group", "-"], CONE);
    assert_eq!(json_of(&out), json!({"rank": 0, "invariant_factors": [2]}));
}

#[test]
fn picard_group_of_the_projective_plane() {
    let out = mscheme(&["picard", "-", "--verify"], P2);
    let v = json_of(&out);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["invariant_factors"], json!([]));
    assert_eq!(v["verification"]["verdict"], "CONFIRMED");
}

#[test]
fn primary_decomposition_has_two_components() {
    let out = mscheme(&["primary-decomp", "-", "--verify", "--degree-bound", "6"], PLANE_IDEAL);
    let v = json_of(&out);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().any(|c| c["ideal"] == json!([[1, 0]])));
    assert!(comps.iter().any(|c| c["ideal"] == json!([[0, 1], [2, 0]])));
    assert_eq!(v["verification"]["checks"], json!(["CONFIRMED to degree 6"]));
}

#[test]
fn projective_line_from_fan_and_from_charts() {
    for doc in [P1, P1_SCRIPT] {
        let out = mscheme(&["picard", "-"], doc);
        assert_eq!(json_of(&out), json!({"rank": 1, "invariant_factors": []}));
        let out = mscheme(&["class-group", "-"], doc);
        assert_eq!(json_of(&out), json!({"rank": 1, "invariant_factors": []}));
    }
}

#[test]
fn ideal_operations() {
    let out = mscheme(&["ideal-op", "-", "--op", "intersection", "--with", r#"["y"]"#, "--verify"], PLANE_IDEAL);
    let v = json_of(&out);
    assert_eq!(v["ideal"], json!([[1, 1]]));
    assert_eq!(v["exact"], true);
    assert_eq!(v["verification"]["verdict"], "CONFIRMED");
    let out = mscheme(&["radical", "-", "--verify"], PLANE_IDEAL);
    assert_eq!(json_of(&out)["radical"], json!([[1, 0]]));
}

#[test]
fn normalization_of_the_axes() {
    let out = mscheme(&["normalization-scheme", "-", "--verify"], AXES);
    let v = json_of(&out);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["global_sections"].as_array().unwrap().len(), 4);
    assert_eq!(v["verification"]["verdict"], "CONFIRMED");
}

#[test]
fn exit_codes() {
    // not normal
    assert_eq!(mscheme(&["class-group", "-"], AXES).status.code(), Some(2));
    // wrong document kind for the command
    assert_eq!(mscheme(&["radical", "-"], P1).status.code(), Some(2));
    // malformed document
    let out = mscheme(&["picard", "-"], r#"{"format":1,"kind":"fan","dim":1}"#);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema error"));
    // quiet suppresses diagnostics
    let out = mscheme(&["picard", "-", "--quiet"], "not json");
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stderr.is_empty());
    // budget too small to certify the radical of (t⁹) in ⟨t², t³⟩
    let cusp = r#"{"format":1,"kind":"monoid","ambient":{"rank":1},"generators":[[2],[3]],"ideal":[[9]]}"#;
    assert_eq!(mscheme(&["radical", "-", "--verify", "--degree-bound", "1"], cusp).status.code(), Some(3));
    assert_eq!(mscheme(&["radical", "-", "--verify", "--degree-bound", "4"], cusp).status.code(), Some(0));
}

#[test]
fn verify_subcommand() {
    let out = mscheme(&["verify", "-", "--claim", "primary-decomp"], PLANE_IDEAL);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "CONFIRMED");
    let out = mscheme(&["verify", "-", "--claim", "ass"], PLANE_IDEAL);
    assert_eq!(json_of(&out)["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn text_output() {
    let out = mscheme(&["class-group", "-", "--format", "text"], CONE);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ℤ/2\n");
    let out = mscheme(&["divisor", "-", "--element", "\"x\"", "--format", "text"], CONE);
    assert!(String::from_utf8_lossy(&out.stdout).contains("coefficient: 2"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["mspec", "-"][..], &["ass", "-"][..], &["normalization-scheme", "-"][..]] {
        let a = mscheme(args, AXES);
        let b = mscheme(args, AXES);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
