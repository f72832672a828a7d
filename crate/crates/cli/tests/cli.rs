//! End-to-end binary tests: golden outputs, exit codes, determinism.

use std::io::Write;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_frobsub");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn contracted_table_tsv_golden() {
    let out = run(&["gw", "p1p1", "--max-n", "12", "--contract", "--format", "tsv"]);
    assert!(out.status.success());
    let expect = "\
1\t2
2\t1
3\t2
4\t14
5\t194
6\t4792
7\t182770
8\t10078480
9\t758120642
10\t74795167616
11\t9374567239394
12\t1456089241205248
";
    assert_eq!(stdout(&out), expect);
}

#[test]
fn catalog_checks_pass() {
    for name in ["A2", "A3", "B3", "H3", "F4", "I2(6)"] {
        let out = run(&["check", "wdvv", name]);
        assert!(out.status.success(), "{name}: {}", stdout(&out));
        let out = run(&["check", "euler", name]);
        assert!(out.status.success(), "{name}");
    }
}

#[test]
fn truncated_quantum_specs_check_out() {
    let out = run(&["check", "wdvv", "CP2", "--max-n", "5"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = run(&["check", "euler", "P1xP1", "--max-n", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1/2"));
}

#[test]
fn natural_roots_prints_the_cubic() {
    let out = run(&["natural-roots", "H3", "--verify-points"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("27*k2^3 - 22*k2^2 - 5*k2"), "{text}");
    assert_eq!(text.matches(": zero").count(), 3);
}

#[test]
fn natural_roots_json_uses_exact_strings() {
    let out = run(&["natural-roots", "F4", "--verify-points", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"-1/36\""), "{text}");
    assert!(text.contains("\"1/18\""), "{text}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["gw", "p1p1", "--max-n", "8", "--contract", "--cross-check", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn tsv_rejected_for_non_tabular_reports() {
    let out = run(&["check", "wdvv", "H3", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["nested-chain", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gw", "cp2", "--max-n", "10", "--check-ode", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_group_is_a_usage_error() {
    let out = run(&["check", "wdvv", "E8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mutated_catalog_fails_with_exit_one() {
    // break the top coefficient of the A3 entry through the override path
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.json");
    let mutated = include_str!("../../core/data/catalog.json").replace("1/60 t3^5", "1/30 t3^5");
    std::fs::File::create(&path)
        .unwrap()
        .write_all(mutated.as_bytes())
        .unwrap();
    let out = Command::new(BIN)
        .env("FROBSUB_CATALOG", &path)
        .args(["check", "wdvv", "A3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn analyze_reports_naturality_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("spec.json");
    let map_path = dir.path().join("map.json");
    std::fs::write(
        &spec_path,
        r#"{
  "variables": ["t1", "t2", "t3"],
  "terms": ["1/2 t1^2 t3", "1/2 t1 t2^2", "1/4 t2^2 t3^2", "1/60 t3^5"],
  "weights": ["4", "3", "2"]
}"#,
    )
    .unwrap();
    // the coordinate plane t2 = 0 is natural
    std::fs::write(
        &map_path,
        r#"{
  "ambient_variables": ["t1", "t2", "t3"],
  "tau_variables": ["tau1", "tau2"],
  "n": 2,
  "components": ["1 tau1", "0", "1 tau2"]
}"#,
    )
    .unwrap();
    let out = run(&[
        "submanifold",
        "analyze",
        "--spec",
        spec_path.to_str().unwrap(),
        "--map",
        map_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("natural: true"));

    // an off-root family member is not natural: exit 1
    std::fs::write(
        &map_path,
        r#"{
  "ambient_variables": ["t1", "t2", "t3"],
  "tau_variables": ["tau1", "tau2"],
  "n": 2,
  "components": ["1 tau1; -9/16 tau2^2", "1 tau2^(3/2)", "1 tau2"]
}"#,
    )
    .unwrap();
    let out = run(&[
        "submanifold",
        "analyze",
        "--spec",
        spec_path.to_str().unwrap(),
        "--map",
        map_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("natural: false"));
}

#[test]
fn analyze_handles_graded_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("quadric2.json");
    let map_path = dir.path().join("slice.json");
    // quadric prepotential truncated at total degree 2
    std::fs::write(
        &spec_path,
        r#"{
  "variables": ["t1", "t2", "t3", "t4"],
  "exponential_variables": [["q2", "t2"], ["q3", "t3"]],
  "terms": ["1/2 t1^2 t4", "1 t1 t2 t3", "1 t4 q2", "1 t4 q3", "1/6 t4^3 q2 q3"],
  "weights": ["1/2", "0", "0", "-1/2"],
  "shifts": ["0", "1", "1", "0"],
  "truncation": 2
}"#,
    )
    .unwrap();
    std::fs::write(
        &map_path,
        r#"{
  "ambient_variables": ["t1", "t2", "t3", "t4"],
  "ambient_exponential": [["q2", "t2"], ["q3", "t3"]],
  "tau_variables": ["tau1", "sigma", "tau3"],
  "tau_exponential": [["qs", "sigma"]],
  "n": 3,
  "components": ["1 tau1", "1 sigma", "1 sigma", "1 tau3", "1 qs", "1 qs"]
}"#,
    )
    .unwrap();
    let out = run(&[
        "submanifold",
        "analyze",
        "--spec",
        spec_path.to_str().unwrap(),
        "--map",
        map_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("natural: true"), "{text}");
    assert!(text.contains("euler tangent: true"), "{text}");
    assert!(text.contains("[0, 2, 0]"), "middle metric entry 2: {text}");
}

#[test]
fn cp2_tsv_golden_small() {
    let out = run(&["gw", "cp2", "--max-n", "5", "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\t1\n2\t1\n3\t12\n4\t620\n5\t87304\n");
}

#[test]
fn recursion_report_flags_the_discrepancy() {
    let out = run(&["gw", "p1p1", "--max-n", "6", "--contract", "--report-contracted-recursion"]);
    // the report is diagnostic: the run itself still exits 0
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("claims N_2 = 2; table has 1"), "{text}");
    assert!(text.contains("consistent: false"), "{text}");
    assert!(text.contains("ratio 2"), "{text}");
}
