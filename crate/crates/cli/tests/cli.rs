//! End-to-end tests of the `divzero` binary: exit codes, payload
//! determinism, and the induced-module pipeline wired through files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_divzero")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const EL_D: &str = r#"{"schema_version": 1, "n": 2,
  "d_terms": [{"degree": [1, 0], "u": [["0", "0"], ["1", "0"]]}]}"#;

const EL_DT: &str = r#"{"schema_version": 1, "n": 2,
  "d_terms": [{"degree": [0, 1], "u": [["1", "0"], ["0", "0"]]}],
  "t_terms": [{"degree": [1, 1], "coeff": ["2", "0"]}]}"#;

const JET: &str = r#"{"schema_version": 1, "kind": "jet", "n": 2, "lambda": [0],
  "c": ["0", "0"], "alpha": [["1/3", "0"], ["0", "0"]], "e": ["1", "0"]}"#;

const RECIPE: &str = r#"{"schema_version": 1, "algebra": "extended_divergence_zero",
  "triangular": {"schema_version": 1, "m_basis": [[1, 0]], "beta": [0, 1]},
  "inducing": {"kind": "character", "lambda0": [["1/2", "0"], ["1", "0"]], "c0": ["1", "0"]},
  "depth": 1, "m_window": 1}"#;

#[test]
fn bracket_matches_the_library_and_repeats_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", EL_D);
    write(dir.path(), "b.json", EL_DT);
    let first = run_in(dir.path(), &["bracket", "a.json", "b.json"]);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let second = run_in(dir.path(), &["bracket", "a.json", "b.json"]);
    assert_eq!(first.stdout, second.stdout, "payload must be reproducible");

    let payload = stdout_json(&first);
    let result: divzero::descriptor::ElementJson =
        serde_json::from_value(payload["bracket"].clone()).unwrap();
    let lhs: divzero::descriptor::ElementJson = serde_json::from_str(EL_D).unwrap();
    let rhs: divzero::descriptor::ElementJson = serde_json::from_str(EL_DT).unwrap();
    let expected = lhs.build().unwrap().bracket(&rhs.build().unwrap()).unwrap();
    assert_eq!(result.build().unwrap(), expected);
}

#[test]
fn malformed_descriptors_exit_two_with_a_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let with_extra = EL_D.replace(r#""n": 2,"#, r#""n": 2, "stray": true,"#);
    write(dir.path(), "bad.json", &with_extra);
    write(dir.path(), "ok.json", EL_DT);
    let out = run_in(dir.path(), &["bracket", "bad.json", "ok.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown field"), "{}", stderr(&out));

    let stale = JET.replace(r#""schema_version": 1"#, r#""schema_version": 99"#);
    write(dir.path(), "stale.json", &stale);
    let out = run_in(dir.path(), &["jet-check", "stale.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("schema version"), "{}", stderr(&out));

    let out = run_in(dir.path(), &["bracket", "missing.json", "ok.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("missing.json"), "{}", stderr(&out));
}

#[test]
fn jet_check_reports_all_passing_checks() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "jet.json", JET);
    let out = run_in(dir.path(), &["jet-check", "jet.json", "--window", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let payload = stdout_json(&out);
    assert_eq!(payload["all_passed"], Value::Bool(true));
    assert_eq!(payload["verdict"]["verdict"], "irreducible");
    let checks = payload["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks
        .iter()
        .all(|c| c["status"] == "pass" && c["cases"].as_u64().unwrap() > 0));
}

#[test]
fn induced_pipeline_scans_quotients_and_classifies() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "recipe.json", RECIPE);
    let out = run_in(
        dir.path(),
        &["verma-build", "recipe.json", "--out", "dump.json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let dump: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("dump.json")).unwrap()).unwrap();
    let singular = dump["singular"]["vectors"].as_array().unwrap();
    assert_eq!(singular.len(), 6, "every level -1 vector is singular");
    assert!(singular.iter().all(|v| v["fully_checked"] == Value::Bool(true)));
    let leaks = dump["ledger"].as_array().map_or(0, Vec::len);
    assert_eq!(leaks, 0, "character windows act without leaking");

    let out = run_in(dir.path(), &["singular", "dump.json", "--level", "-1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = stdout_json(&out);
    assert_eq!(report["vectors"].as_array().unwrap().len(), 6);

    let out = run_in(dir.path(), &["quotient", "dump.json", "--out", "q.json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let quotient: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("q.json")).unwrap()).unwrap();
    let weights = quotient["weights"].as_array().unwrap();
    assert_eq!(weights.len(), 1, "quotient collapses to the top weight");
    assert_eq!(weights[0]["degree"], serde_json::json!([0, 0]));
    assert_eq!(weights[0]["dim"], 1);

    let out = run_in(dir.path(), &["classify", "q.json", "--bound", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout_json(&out)["verdict"], "generalized_highest_weight");

    let out = run_in(
        dir.path(),
        &["classify", "q.json", "--bound", "1", "--expect", "cuspidal-consistent"],
    );
    assert_eq!(code(&out), 1, "missed expectation exits 1");
}

#[test]
fn jet_dumps_classify_as_cuspidal_consistent() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "jet.json", JET);
    let out = run_in(
        dir.path(),
        &["jet-support", "jet.json", "--window", "1", "--dump", "win.json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let support = stdout_json(&out);
    let entries = support["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9, "full 3x3 degree window");

    let out = run_in(
        dir.path(),
        &[
            "classify",
            "win.json",
            "--bound",
            "1",
            "--expect",
            "cuspidal-consistent",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout_json(&out)["verdict"], "cuspidal_consistent");
}

#[test]
fn grading_table_draws_a_multiplicity_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["grading", "--n", "2", "--window", "1", "--format", "table"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("y\\x"), "{text}");
    assert!(text.contains("2  3  2"), "origin row shows the extra class:\n{text}");

    let out = run_in(dir.path(), &["grading", "--n", "2"]);
    assert_eq!(code(&out), 2, "neither --degree nor --window is an input error");
}

#[test]
fn halfplane_checks_pass_and_density_finds_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["halfplane", "--sqrt", "2", "--check"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let payload = stdout_json(&out);
    assert_eq!(payload["all_passed"], Value::Bool(true));
    assert_eq!(payload["checks"].as_array().unwrap().len(), 3);

    let out = run_in(
        dir.path(),
        &["halfplane", "--sqrt", "2", "--between", "2,-1,5,-3"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let witness = stdout_json(&out)["witness"].as_array().unwrap().clone();
    let w = divzero::LatticeVector(vec![
        witness[0].as_i64().unwrap(),
        witness[1].as_i64().unwrap(),
    ]);
    let alpha = divzero::QuadraticIrrational::sqrt(2).unwrap();
    let r = divzero::LatticeVector(vec![2, -1]);
    let s = divzero::LatticeVector(vec![5, -3]);
    assert_eq!(alpha.compare(&r, &w).unwrap(), std::cmp::Ordering::Less);
    assert_eq!(alpha.compare(&w, &s).unwrap(), std::cmp::Ordering::Less);
}

#[test]
fn out_flag_writes_the_payload_and_quiets_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["grading", "--n", "3", "--degree", "1,0,-1", "--out", "g.json"],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out.stdout.is_empty(), "payload goes to the file only");
    let text = fs::read_to_string(dir.path().join("g.json")).unwrap();
    let payload: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(payload["dim"], 3, "off-origin component of the extended algebra");
}

#[test]
fn thread_override_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(bin())
        .args(["grading", "--n", "2", "--degree", "0,0"])
        .env("DIVZERO_THREADS", "zero")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("DIVZERO_THREADS"), "{}", stderr(&out));

    let out = Command::new(bin())
        .args(["grading", "--n", "2", "--degree", "0,0"])
        .env("DIVZERO_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}
