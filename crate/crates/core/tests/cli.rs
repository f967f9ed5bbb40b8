//! End-to-end tests of the `dynkin-spectral` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use dynkin_spectral::coxeter::CSeries;
use dynkin_spectral::oracle::TupleInstance;
use dynkin_spectral::roots::RootClass;
use dynkin_spectral::solver::{Decision, Mode, Verdict};
use dynkin_spectral::tables::{Status, VerifyReport};
use dynkin_spectral::transition::AlgebraCharacter;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynkin-spectral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn chi_file(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}.json"));
    std::fs::write(&path, json).unwrap();
    path
}

const D4_UNIT: &str = r#"{"graph":"D4t","arms":[["1"],["1"],["1"],["1"]],"gamma":"2"}"#;
const D4_THREES: &str = r#"{"graph":"D4t","arms":[["3"],["3"],["3"],["3"]],"gamma":"4"}"#;

#[test]
fn decide_hyperplane_yes_exits_zero() {
    let chi = chi_file("unit", D4_UNIT);
    let o = bin(&[
        "decide",
        "--graph",
        "D4t",
        "--chi",
        chi.to_str().unwrap(),
        "--dim",
        "1,1,1,1;2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let d: Decision = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(d.verdict, Verdict::Yes);
    assert_eq!(d.mode, Mode::Hyperplane);
    assert_eq!(d.evidence.len(), 4);
}

#[test]
fn decide_cseries_yes_and_no() {
    let chi = chi_file("threes", D4_THREES);
    let p = chi.to_str().unwrap();
    let yes = bin(&["decide", "--graph", "D4t", "--chi", p, "--dim", "1,1,1,1;3"]);
    assert_eq!(yes.status.code(), Some(0));
    let d: Decision = serde_json::from_str(&stdout(&yes)).unwrap();
    let w = d.witness.expect("C-series witness");
    assert_eq!((w.t, w.k), (0, 2));

    let no = bin(&["decide", "--graph", "D4t", "--chi", p, "--dim", "1,1,1,1;4"]);
    assert_eq!(no.status.code(), Some(1));
    let d: Decision = serde_json::from_str(&stdout(&no)).unwrap();
    assert_eq!(d.verdict, Verdict::No);
}

#[test]
fn decide_reads_stdin_and_text_format() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_dynkin-spectral"))
        .args([
            "decide",
            "--graph",
            "D4t",
            "--chi",
            "-",
            "--dim",
            "1,1,1,1;2",
            "--format",
            "text",
        ])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(D4_UNIT.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("yes (Hyperplane)"));
}

#[test]
fn input_errors_have_distinct_messages_and_exit_two() {
    let chi = chi_file("unit-errors", D4_UNIT);
    let p = chi.to_str().unwrap();
    let unknown = bin(&["decide", "--graph", "F4t", "--chi", p, "--dim", "1,1,1,1;2"]);
    let bad_rat = chi_file(
        "bad-rational",
        r#"{"graph":"D4t","arms":[["1/0"],["1"],["1"],["1"]],"gamma":"2"}"#,
    );
    let rational = bin(&[
        "decide",
        "--graph",
        "D4t",
        "--chi",
        bad_rat.to_str().unwrap(),
        "--dim",
        "1,1,1,1;2",
    ]);
    let length = bin(&["decide", "--graph", "D4t", "--chi", p, "--dim", "1,1,1;2"]);
    let mut messages = Vec::new();
    for o in [&unknown, &rational, &length] {
        assert_eq!(o.status.code(), Some(2), "{}", stderr(o));
        assert!(stdout(o).is_empty());
        messages.push(stderr(o));
    }
    assert!(messages[0].contains("unknown graph"), "{}", messages[0]);
    assert!(messages[1].contains("malformed rational"), "{}", messages[1]);
    assert!(messages[2].contains("length mismatch"), "{}", messages[2]);
}

#[test]
fn graph_mismatch_and_missing_file_are_input_errors() {
    let chi = chi_file("mismatch", D4_UNIT);
    let o = bin(&[
        "decide",
        "--graph",
        "E6t",
        "--chi",
        chi.to_str().unwrap(),
        "--dim",
        "1,1,1,1,1,1;3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("character is for D4t"));
    let o = bin(&[
        "decide",
        "--graph",
        "D4t",
        "--chi",
        "/nonexistent/chi.json",
        "--dim",
        "1,1,1,1;2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
    let o = bin(&["decide", "--graph", "D4t"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_round_trips() {
    let chi = chi_file("threes-enum", D4_THREES);
    let o = bin(&[
        "enumerate",
        "--graph",
        "D4t",
        "--chi",
        chi.to_str().unwrap(),
        "--max-n0",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let list: Vec<Decision> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(list.iter().all(Decision::is_yes));
    assert!(list.iter().any(|d| d.dimension.to_string() == "1,1,1,1;3"));
}

#[test]
fn orbit_json_is_a_series() {
    let o = bin(&["orbit", "--graph", "D4t", "--vertex", "1", "--steps", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let elements = v.as_object_mut().unwrap().remove("elements").unwrap();
    assert_eq!(elements.as_array().unwrap().len(), 6);
    let s: CSeries = serde_json::from_value(v).unwrap();
    assert_eq!(s.threshold, 5);
    assert_eq!(s.digit_strings(), ["10000", "10001", "01111", "01112"]);
    // Without --steps the output is exactly the series.
    let o = bin(&["orbit", "--graph", "E6t", "--vertex", "0"]);
    let s: CSeries = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s.threshold, 4);
}

#[test]
fn roots_lists_classified_reps() {
    let o = bin(&["roots", "--graph", "D4t"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 25);
    let reps: Vec<RootClass> = serde_json::from_value(v["reps"].clone()).unwrap();
    assert_eq!(reps.len(), 25);
}

#[test]
fn tables_contain_the_d4_series_line() {
    let o = bin(&["tables", "--graph", "D4t"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C_1: 10000, 10001, 01111, 01112"));
}

#[test]
fn verify_flags_e7_orbit_count_without_failing() {
    let o = bin(&["verify", "--graph", "E7t"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("KNOWN E7t.delta-orbits"));
    let o = bin(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<VerifyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 4);
    let e7 = &reports[2];
    assert_eq!(e7.get("E7t.delta-orbits").unwrap().status, Status::Known);
}

#[test]
fn construct_emits_a_verifiable_instance() {
    let chi = chi_file("unit-construct", D4_UNIT);
    let o = bin(&[
        "construct",
        "--graph",
        "D4t",
        "--chi",
        chi.to_str().unwrap(),
        "--dim",
        "1,1,1,1;2",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let inst: TupleInstance = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(inst.matrices.len(), 4);
    assert!(stderr(&o).contains("sum residual"));
}

#[test]
fn construct_refuses_large_dimensions() {
    let chi = chi_file("unit-large", D4_UNIT);
    let o = bin(&[
        "construct",
        "--graph",
        "D4t",
        "--chi",
        chi.to_str().unwrap(),
        "--dim",
        "5,5,5,5;10",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn character_json_round_trips() {
    let chi: AlgebraCharacter = serde_json::from_str(D4_THREES).unwrap();
    let back: AlgebraCharacter = serde_json::from_str(&serde_json::to_string(&chi).unwrap()).unwrap();
    assert_eq!(chi, back);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["--version"]).status.code(), Some(0));
}
