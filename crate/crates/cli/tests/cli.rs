//! End-to-end tests of the binary: output shapes, determinism, and exit
//! codes.

use std::path::Path;
use std::process::{Command, Output};

fn idemca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idemca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = idemca(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table_matches_the_golden_fixture() {
    let got = stdout(&["table", "--domain", "-1,0,1"]);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/golden/table_row1.tsv");
    let expected = std::fs::read_to_string(golden).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn classify_emits_verdict_json() {
    let got = stdout(&["classify", "--domain", "-2,-1,0,1,2", "--pattern", "00010"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["idempotent"], true);
    assert_eq!(v["reason"], "QuasiConstantCond2");
    assert!(v.get("witness").is_none());

    let got = stdout(&["classify", "--domain", "-2,-1,0,1,2", "--pattern", "00001"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["idempotent"], false);
    assert!(v["witness"]["values"].is_array());
}

#[test]
fn classify_accepts_a_job_record() {
    let record = r#"{"group":"zd:1","domain":[-1,0,1],"values":[1,0,1],"alphabet":2}"#;
    let got = stdout(&["classify", "--job", record]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["reason"], "SymmetricalPattern");
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    let args = ["table", "--domain", "-2,-1,0,1,2"];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second);
    let single = stdout(&["--threads", "1", "table", "--domain", "-2,-1,0,1,2"]);
    let double = stdout(&["--threads", "2", "table", "--domain", "-2,-1,0,1,2"]);
    assert_eq!(single, first);
    assert_eq!(double, first);
}

#[test]
fn order_reports_the_crosscheck_split() {
    let p = r#"{"group":"zd:1","domain":[0,1],"values":[0,0],"alphabet":2,"write":1}"#;
    let q = r#"{"group":"zd:1","domain":[-1,0,1],"values":[0,0,0],"alphabet":2,"write":1}"#;
    let got = stdout(&["order", "--p", p, "--q", q, "--crosscheck"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["leq"], false);
    assert_eq!(v["crosscheck"]["image_inclusion"], true);
    assert_eq!(v["crosscheck"]["kernel_inclusion"], false);
}

#[test]
fn shift_outputs_plain_numbers() {
    let words = stdout(&["shift", "words", "--domain", "0,1", "--pattern", "11", "--n", "4"]);
    assert_eq!(words.trim(), "8");
    let entropy = stdout(&["shift", "entropy", "--domain", "0,1", "--pattern", "11"]);
    assert!(entropy.starts_with("log2=0.694241913"));
    assert!(entropy.contains("ln=0.481211825"));
    let p = r#"{"group":"zd:1","domain":[0,1],"values":[0,0],"alphabet":2}"#;
    let q = r#"{"group":"zd:1","domain":[-1,0,1],"values":[0,0,0],"alphabet":2}"#;
    let subset = stdout(&["shift", "subset", "--p", p, "--q", q]);
    assert_eq!(subset.trim(), "true");
}

#[test]
fn rule_subcommands() {
    let wolfram = stdout(&["rule", "wolfram", "--table", "01101110", "--domain", "-1,0,1"]);
    assert_eq!(wolfram.trim(), "110");
    let wolfram = stdout(&["rule", "wolfram", "--domain", "-1,0,1", "--pattern", "010"]);
    assert_eq!(wolfram.trim(), "200");
    let mms = stdout(&["rule", "mms", "--table", "01100110", "--domain", "-1,0,1"]);
    let v: serde_json::Value = serde_json::from_str(&mms).unwrap();
    assert_eq!(v["memory"], serde_json::json!([0, 1]));
    assert_eq!(v["table"], "0110");
    let detected = stdout(&["rule", "detect-pattern", "--table", "11001000", "--domain", "-1,0,1"]);
    let v: serde_json::Value = serde_json::from_str(&detected).unwrap();
    assert_eq!(v["values"], serde_json::json!([0, 1, 0]));
    assert_eq!(v["write"], 0);
    let none = stdout(&["rule", "detect-pattern", "--table", "00000100", "--domain", "-1,0,1"]);
    assert_eq!(none.trim(), "none");
}

#[test]
fn oracle_runs_on_a_cayley_fixture() {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/z4.json");
    let group = format!("cayley:{}", fixture.display());
    let verdict = stdout(&[
        "oracle", "idem", "--group", &group, "--domain", "0,1", "--pattern", "00", "--write", "1",
    ]);
    assert_eq!(verdict.trim(), "true");
    let fixed = stdout(&[
        "oracle", "fix", "--group", &group, "--domain", "0,1", "--pattern", "00", "--write", "1",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&fixed).unwrap();
    // Configurations of Z4 with no cyclically adjacent 00.
    assert_eq!(v["count"], 7);
}

#[test]
fn hasse_writes_dot_output() {
    let dir = std::env::temp_dir().join(format!("idemca-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("chain.dot");
    let _ = stdout(&[
        "hasse",
        "--family",
        "chain",
        "--n",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph hasse"));
    assert_eq!(dot.matches("->").count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn domain_errors_exit_with_two() {
    let out = idemca(&["table", "--domain", "zebra"]);
    assert_eq!(out.status.code(), Some(2));
    // Write symbol equal to p(e) names the identity CA.
    let out = idemca(&[
        "classify", "--domain", "-1,0,1", "--pattern", "010", "--write", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("identity"));
}

#[test]
fn size_cap_refusals_exit_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_idemca"))
        .args(["classify", "--domain", "-2,-1,0,1,2", "--pattern", "00010"])
        .env("IDEMCA_TABLE_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
