use std::process::{Command, Output};

use serde_json::Value;

fn dle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dle")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn identity_is_valid() {
    let out = dle(&["decide", "p |- p"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("VALID\n"));
}

#[test]
fn box_over_join_is_invalid_with_refutation_and_countermodel() {
    let out = dle(&["decide", "g(p|q) |- g(p)|g(q)"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("INVALID\n"));
    assert!(text.contains("refutation:"));
    for rule in ["∨_R", "g_R", "g_L", "∨_L1", "∨_L2", "Ax3", "Ax4"] {
        assert!(text.contains(rule), "missing {rule} in\n{text}");
    }
    assert!(text.contains("countermodel: lattice diamond"));
}

#[test]
fn parse_error_exits_2() {
    let out = dle(&["decide", "f(p,"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn unknown_signature_and_residual_input_exit_2() {
    assert_eq!(dle(&["decide", "--signature", "no-such-sig", "p |- p"]).status.code(), Some(2));
    assert_eq!(dle(&["decide", "^g@1(p) |- q"]).status.code(), Some(2));
    assert_eq!(dle(&["decide"]).status.code(), Some(2));
}

#[test]
fn json_report_is_versioned() {
    let out = dle(&["decide", "--format", "json", "--cross-check", "g(p)&g(q) |- g(p&q)"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["status"], "VALID");
    assert!(v["proof"].is_object());
    assert!(v["refutation"].is_null());
    assert_eq!(v["tableau"]["verdict"], "VALID");
    assert_eq!(v["countermodel"], "INCONCLUSIVE");
}

#[test]
fn single_engines_agree() {
    for engine in ["prover", "refuter", "tableau"] {
        assert_eq!(dle(&["decide", "--engine", engine, "f(p)&f(q) |- f(p&q)"]).status.code(), Some(1), "{engine}");
        assert_eq!(dle(&["decide", "--engine", engine, "f(p|q) |- f(p)|f(q)"]).status.code(), Some(0), "{engine}");
    }
}

#[test]
fn dot_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.dot");
    let out = dle(&["decide", "--format", "dot", "--out", path.to_str().unwrap(), "p & q |- p"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn sequent_from_file_and_signature_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("s.txt");
    std::fs::write(&seq, "dia(p | q) |- dia(p) | dia(q)\n").unwrap();
    let sig = dir.path().join("sig.json");
    let text = dle::signature::print_signature(&dle::signature::bundled::unary_modal());
    std::fs::write(&sig, text).unwrap();
    let out = dle(&["decide", "--signature", sig.to_str().unwrap(), "--file", seq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn selftest_depth_zero() {
    let out = dle(&["selftest", "--max-depth", "0", "--random", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("16 sequents checked"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn selftest_default_bounds_pass() {
    let out = dle(&["selftest", "--sample", "100", "--random", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("21008 sequents checked"));
}

#[test]
fn selftest_detects_injected_mutation() {
    let out = dle(&["selftest", "--max-depth", "0", "--random", "0", "--mutate", "ax4-equal-atoms"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p |- p"));
}
