use std::fs;
use std::path::PathBuf;

use assert_cmd::Command;
use serde_json::Value;

fn crsym() -> Command {
    Command::cargo_bin("crsym").unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json_of(args: &[&str]) -> Value {
    let out = crsym().args(args).arg("--json").output().unwrap();
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn free_depth_ten() {
    let v = json_of(&["gnla", "free", "--depth", "10"]);
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 1, 2, 3, 6, 9, 18, 30, 56, 99]);
}

#[test]
fn model_all_2123() {
    let out = crsym().args(["model", "all", &fixture("2123.crm")]).assert().success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("dimension 10"), "{text}");
    assert!(text.contains("type free(4)"), "{text}");
}

#[test]
fn model_symbol_needs_parameters() {
    crsym().args(["model", "symbol", &fixture("2121.crm")]).assert().code(1);
    let v = json_of(&["model", "symbol", &fixture("2121.crm"), "--param", "a=-2"]);
    assert_eq!(v["symbol"]["label"], "ell6");
    assert_eq!(v["symbol"]["extension"]["type"], "elliptic");
}

#[test]
fn enumerate_counts() {
    let v = json_of(&["extend", "enumerate", "--growth", "211", "--max-depth", "9"]);
    let counts: Vec<usize> = v.as_array().unwrap().iter().map(|d| d["classes"].as_array().unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 1, 2, 1, 2]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.crm");
    fs::write(&bad, "coord z : weight 1;\nIm(z = 1;").unwrap();
    crsym().args(["model", "parse", bad.to_str().unwrap()]).assert().code(2);

    let wrong = dir.path().join("wrong.crm");
    fs::write(&wrong, "coord z : weight 1; coord u : weight 2; Im(u) = |z|^2; field S = d(z);").unwrap();
    crsym().args(["model", "verify", wrong.to_str().unwrap()]).assert().code(1);

    crsym().args(["gnla", "deprolong", "hc"]).assert().code(1);
    crsym().args(["gnla", "frobnicate"]).assert().code(2);
    crsym().args(["gnla", "check", "nosuch"]).assert().code(2);
}

#[test]
fn apply_identity_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.json");
    fs::write(&f, r#"[[{"a":"e1'","b":"e3'","value":"1"},{"a":"e1''","b":"e3''","value":"1"}]]"#).unwrap();
    let v = json_of(&["extend", "apply", "hc", "--cocycles", f.to_str().unwrap()]);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
    let c = json_of(&["extend", "classify", "hc", "--cocycles", f.to_str().unwrap()]);
    assert_eq!(c["type"], "elliptic");
}

#[test]
fn prolong_and_jnorm() {
    let v = json_of(&["prolong", "run", "heis3", "--cr-J", "standard"]);
    assert_eq!(v["total"], 8);
    let n = json_of(&["jnorm", "gou:6", "--a", "3", "--b", "-2"]);
    assert_eq!(n["normal"]["a"], "1");
    assert_eq!(n["normal"]["b"], "0");
}

#[test]
fn paper_suite_json_is_repeatable() {
    let a = crsym().args(["paper-suite", "--json"]).output().unwrap();
    let b = crsym().args(["paper-suite", "--json"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 13);
}
