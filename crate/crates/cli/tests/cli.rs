use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_algact"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Writes `algact builtin <name>` to `dir/file`.
fn builtin_file(dir: &Path, name: &str, field: &str, file: &str) -> PathBuf {
    let o = run(&["builtin", name, "--field", field]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let path = dir.join(file);
    fs::write(&path, o.stdout).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_holds() {
    let dir = TempDir::new().unwrap();
    let f = builtin_file(dir.path(), "poisson_abelian2", "Q", "abelian2.json");
    let o = run(&["check", s(&f), "--identity", "poisson"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("holds"));
}

#[test]
fn space_then_check_composes() {
    let dir = TempDir::new().unwrap();
    let f = builtin_file(dir.path(), "poisson_abelian2", "Q", "abelian2_poisson.json");
    let out = dir.path().join("usga.json");
    let o = run(&["space", s(&f), "--kind", "usga-poisson", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("dimension 12"));
    let o = run(&["check", s(&out), "--identity", "lie"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("anticommutative"), "{}", stdout(&o));
}

#[test]
fn scalar_morphism_is_not_acting() {
    let dir = TempDir::new().unwrap();
    let f = builtin_file(dir.path(), "non_acting_scalar_morphism", "Q", "scalar.json");
    let o = run(&["morphism", "check", s(&f)]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("L6") && text.contains("\"2\""), "{text}");
    let o = run(&["--json", "morphism", "check", s(&f)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["acting"], false);
    assert_eq!(v["witness"]["defect"][0], "2");
}

#[test]
fn action_pipeline() {
    let dir = TempDir::new().unwrap();
    let f = builtin_file(dir.path(), "biadjoint_leibniz_2dim_nonlie", "5", "act.json");
    let o = run(&["action", "validate", s(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("L6"));
    let ext = dir.path().join("ext.json");
    let o = run(&["action", "semidirect", s(&f), "-o", s(&ext)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&["action", "extract", s(&ext), "--variety", "leibniz"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), fs::read_to_string(&f).unwrap());
}

#[test]
fn invalid_action_refused_by_semidirect() {
    let dir = TempDir::new().unwrap();
    let f = builtin_file(dir.path(), "non_acting_scalar_action", "Q", "bad.json");
    let o = run(&["action", "validate", s(&f)]);
    assert_eq!(code(&o), 1);
    let o = run(&["action", "semidirect", s(&f), "-o", s(&dir.path().join("x.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("InvalidAction"));
}

#[test]
fn action_files_may_reference_algebra_files() {
    let dir = TempDir::new().unwrap();
    builtin_file(dir.path(), "abelian1", "3", "line.json");
    let f = dir.path().join("act.json");
    fs::write(&f, r#"{"variety":"leibniz","acting":"line.json","kernel":"line.json","l":[[0,0,0,1]],"r":[[0,0,0,2]]}"#)
        .unwrap();
    let o = run(&["action", "validate", s(&f)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let o = run(&["check", s(&bad), "--identity", "lie"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("InputError"));

    let one_op = builtin_file(dir.path(), "abelian2", "Q", "a.json");
    let o = run(&["check", s(&one_op), "--identity", "poisson"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("OpArityMismatch"));

    let o = run(&["check", s(&one_op), "--identity", "lie", "--bogus"]);
    assert_eq!(code(&o), 2);

    let o = run(&["builtin", "no_such_thing"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("UnknownName"));

    let lie = builtin_file(dir.path(), "sl2", "Q", "sl2.json");
    let o = run(&["space", s(&lie), "--kind", "bimultipliers"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("NotAssociative"));
}

#[test]
fn repro_runs() {
    let o = run(&["repro"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("all facts confirmed"));
    let o = run(&["repro", "--fact", "e", "--field", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness"));
    let o = run(&["repro", "--fact", "z"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hunt_is_deterministic_across_thread_counts() {
    let args = ["--json", "hunt", "--p", "3", "--dim", "2", "--samples", "150", "--seed", "11"];
    let a = run(&[&["--threads", "1"], &args[..]].concat());
    let b = run(&[&["--threads", "4"], &args[..]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["counts"]["sampled"], 150);
    let zero = run(&["--json", "hunt", "--p", "3", "--dim", "2", "--samples", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&zero.stdout).unwrap();
    assert_eq!(v["counts"]["poisson"], 0);
    assert_eq!(v["findings"].as_array().unwrap().len(), 0);
}

#[test]
fn hunt_verify_rejects_a_bundle_without_a_counterexample() {
    let dir = TempDir::new().unwrap();
    let line = run(&["builtin", "poisson_abelian1"]);
    let bundle = format!(
        r#"{{"params":{{"p":3,"dim":1,"samples":1,"seed":0}},"index":0,"algebra":{},"usga":null,"failure":null}}"#,
        stdout(&line)
    );
    let f = dir.path().join("finding.json");
    fs::write(&f, bundle).unwrap();
    let o = run(&["hunt", "--verify", s(&f)]);
    assert_eq!(code(&o), 1, "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("NOT confirmed"));
}

#[test]
fn enumerate_respects_budget() {
    let dir = TempDir::new().unwrap();
    builtin_file(dir.path(), "leibniz_2dim_nonlie", "3", "l2.json");
    builtin_file(dir.path(), "abelian1", "3", "line.json");
    let pair = dir.path().join("pair.json");
    fs::write(&pair, r#"{"variety":"leibniz","acting":"line.json","kernel":"l2.json"}"#).unwrap();
    let o = run(&["enumerate", s(&pair)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("bijection under action_to_morphism: yes"));

    let o = bin().args(["enumerate", s(&pair)]).env("ALGACT_BUDGET", "100").output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("BudgetExceeded"));

    let big = dir.path().join("big.json");
    fs::write(&big, r#"{"variety":"leibniz","acting":"l2.json","kernel":"l2.json"}"#).unwrap();
    let o = run(&["enumerate", s(&big)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("BudgetExceeded"));
}
