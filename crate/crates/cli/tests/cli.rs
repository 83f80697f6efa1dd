//! End-to-end tests of the binary: exit codes, stdout/stderr separation,
//! JSON mode and file inputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ccrep"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ccrep-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn sig_file(dir: &Path, contents: &str) -> PathBuf {
    let path = dir.join("sig");
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    let dir = workdir("shared");
    let sig = sig_file(&dir, "r: a\nl: b\n");
    bin()
        .arg("--sig")
        .arg(&sig)
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_bi(args: &[&str]) -> Output {
    let dir = workdir("shared-bi");
    let sig = sig_file(&dir, "r: a\nl: b\nbi: c\n");
    bin()
        .arg("--sig")
        .arg(&sig)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sim_exit_codes_follow_the_verdict() {
    let out = run(&["sim", "w", "a.b.0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "yes\n");

    let out = run(&["sim", "0", "b.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no\n");
}

#[test]
fn sim_witness_dumps_the_relation_as_json() {
    let out = run(&["sim", "w", "0", "--witness"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "yes\n[[\"w\",\"0\"]]\n");

    let out = run(&["sim", "0", "b.0", "--witness"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no\n");
}

#[test]
fn charform_prints_the_formula() {
    let out = run(&["charform", "0"]);
    assert_eq!(stdout(&out), "[b]ff\n");
    let out = run(&["charform", "a.0"]);
    assert_eq!(stdout(&out), "<a>[b]ff & [b]ff\n");
}

#[test]
fn prime_reports_the_antichain() {
    let out = run(&["prime", "<a>tt | [b]ff"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "not prime: antichain {0, a.w + b.w}\n");

    let out = run(&["prime", "<a>tt"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "prime: yes\nrepresentable by a single process: yes\nwitness: a.w + b.w\n"
    );

    // ff is vacuously prime but not representable by a single process
    let out = run(&["prime", "ff"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "prime: yes\nrepresentable by a single process: no\n"
    );
}

#[test]
fn json_mode_encodes_the_same_verdict() {
    let text = run(&["sim", "w", "a.b.0"]);
    let json = run(&["--json", "sim", "w", "a.b.0"]);
    assert_eq!(text.status.code(), json.status.code());
    assert_eq!(stdout(&json), "{\"verdict\":true}\n");

    let json = run(&["--json", "prime", "<a>tt | [b]ff"]);
    assert_eq!(json.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["verdict"], serde_json::Value::Bool(false));
    assert_eq!(doc["antichain"][0], "0");
}

#[test]
fn parse_errors_exit_2_with_stderr_diagnostics() {
    let out = run(&["sim", "c.0", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown action"), "{err}");
}

#[test]
fn term_inputs_can_come_from_files() {
    let dir = workdir("atfile");
    let sig = sig_file(&dir, "r: a\nl: b\n");
    let term = dir.join("term.txt");
    fs::write(&term, "a.0 + b.w\n").unwrap();
    let out = bin()
        .arg("--sig")
        .arg(&sig)
        .arg("parse")
        .arg(format!("@{}", term.display()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a.0 + b.w\n");
}

#[test]
fn snf_budget_exits_3() {
    let dir = workdir("budget");
    let sig = sig_file(&dir, "r: a\nl: b\n");
    let out = bin()
        .arg("--sig")
        .arg(&sig)
        .args(["snf", "(<a>tt | [b]ff) & (<a><a>tt | [b][b]ff)"])
        .env("CCREP_MAX_SNF_DISJUNCTS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_explains_the_evaluation() {
    let out = run(&["check", "a.0", "<a>tt", "--explain"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a.0 |= <a>tt => yes\n  0 |= tt => yes\nyes\n");
}

#[test]
fn encode_and_decode_round_trip_on_terms() {
    let out = run_bi(&["encode", "c.0"]);
    assert_eq!(stdout(&out), "c^l.0 + c^r.0\n");

    let out = run_bi(&["decode", "c^r.0 + c^l.0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "c.0\n");

    let out = run_bi(&["decode", "c^r.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not representable"));

    let out = run_bi(&["isrep", "c^r.0 + c^l.0"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run_bi(&["isrep", "c^r.0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn translate_renames_bivariant_modalities() {
    let out = run_bi(&["translate", "<c>tt & [c]ff & <a>tt"]);
    assert_eq!(stdout(&out), "<a>tt & <c^r>tt & [c^l]ff\n");
}

#[test]
fn lts_output_is_deterministic_json() {
    let a = run(&["lts", "a.0 + b.w"]);
    let b = run(&["lts", "b.w + a.0"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(
        stdout(&a),
        "{\"states\":[\"0\",\"a.0 + b.w\",\"w\"],\"initial\":\"a.0 + b.w\",\"edges\":[[\"a.0 + b.w\",\"a\",\"0\"],[\"a.0 + b.w\",\"b\",\"w\"],[\"w\",\"b\",\"w\"]]}\n"
    );
}

#[test]
fn enumerate_lists_canonical_items() {
    let dir = workdir("enum");
    let sig = sig_file(&dir, "r: a\n");
    let out = bin()
        .arg("--sig")
        .arg(&sig)
        .args(["enumerate", "terms", "--max-depth", "1", "--max-width", "1"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "0\nw\na.0\na.w\n");
}

#[test]
fn missing_signature_is_a_usage_error() {
    let out = bin().args(["sim", "0", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_handles_formulae_behind_a_flag() {
    let out = run(&["parse", "[b]ff&<a>tt", "--formula"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "<a>tt & [b]ff\n");

    let out = run(&["--json", "parse", "a.0+b.w"]);
    assert_eq!(
        stdout(&out),
        "{\"canonical\":\"a.0 + b.w\",\"kind\":\"term\"}\n"
    );
}

#[test]
fn json_explain_carries_the_trace() {
    let out = run(&["--json", "check", "w", "[b]ff", "--explain"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], serde_json::Value::Bool(false));
    assert_eq!(doc["trace"][0], "w |= [b]ff => no");
}

#[test]
fn entails_prints_counterexamples() {
    let out = run(&["entails", "<a>tt", "[b]ff"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no\ncounterexample: a.w + b.w\n");

    let out = run(&["entails", "<a>[b]ff", "<a>tt"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "yes\n");
}

#[test]
fn equiv_spots_the_failing_direction() {
    let out = run(&["equiv", "[b]tt", "tt"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["equiv", "<a>tt", "tt"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("satisfies the right formula only"), "{text}");
}
