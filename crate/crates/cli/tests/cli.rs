//! End-to-end tests of the `apolar` binary: exit-code contract, output
//! formats, environment-variable precedence and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .env_remove("APOLAR_MODE")
        .env_remove("APOLAR_CEILING")
        .env_remove("APOLAR_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is one JSON document")
}

#[test]
fn hilbert_det_3() {
    let out = apolar(&["hilbert", "--invariant", "det", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hilbert"], serde_json::json!([1, 9, 9, 1]));
    assert_eq!(v["length"], 20);
    assert_eq!(v["mode"], "rational");
}

#[test]
fn hilbert_with_mu_and_csv() {
    let out = apolar(&["hilbert", "--invariant", "pf", "--n", "2", "--with-mu"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hilbert"], serde_json::json!([1, 6, 1]));
    assert_eq!(v["mu"]["2"], 20);
    assert_eq!(v["mu"]["3"], 0);

    let out = apolar(&["hilbert", "--invariant", "det", "--n", "2", "--format", "csv"]);
    assert_eq!(stdout(&out).trim(), "det,2,6,1 4 1");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(apolar(&["hilbert", "--invariant", "det", "--n", "0"]).status.code(), Some(1));
    assert_eq!(apolar(&["hilbert", "--invariant", "nope", "--n", "2"]).status.code(), Some(1));
    assert_eq!(apolar(&["hilbert"]).status.code(), Some(1));
    assert_eq!(apolar(&["--help"]).status.code(), Some(0));
}

#[test]
fn ceiling_exit_2() {
    let out =
        apolar(&["--ceiling", "5", "hilbert", "--invariant", "det", "--n", "4", "--with-mu"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_det_3_both_routes() {
    let out = apolar(&["verify", "--invariant", "det", "--n", "3", "--route", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["direct"]["all_equal"], true);
    assert_eq!(v["groebner"]["report"]["isGroebner"], true);
}

#[test]
fn verify_dropped_candidate_exit_3() {
    let out =
        apolar(&["verify", "--invariant", "det", "--n", "3", "--drop-candidate", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["pass"], false);
}

#[test]
fn groebner_ls_basis() {
    let out = apolar(&["groebner", "--invariant", "perm", "--n", "3", "--basis", "ls"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["isGroebner"], true);
    assert_eq!(v["minimal"], true);
    assert_eq!(v["reduced"], true);
}

#[test]
fn bounds_pf_4() {
    let out = apolar(&["bounds", "--invariant", "pf", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rs_lower"], 64);
    assert_eq!(v["length"], 128);
}

#[test]
fn bounds_det_2() {
    let out = apolar(&["bounds", "--invariant", "det", "--n", "2", "--certify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rs_lower"], 3);
    assert_eq!(v["lt_lower"], 4);
    assert_eq!(v["l_diff"], 4);
}

#[test]
fn table_golden_match() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/table1.csv");
    let out = apolar(&["table", "--n", "2..6", "--golden", golden.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), std::fs::read_to_string(golden).unwrap());
}

#[test]
fn table_golden_mismatch_exit_3() {
    let dir = std::env::temp_dir().join("apolar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad-table.csv");
    std::fs::write(&bad, "n,rs_lower,lt_lower,l_diff\n2,3,4,5\n").unwrap();
    let out = apolar(&["table", "--n", "2..2", "--golden", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn contract_evaluates_canonical_text() {
    let out = apolar(&[
        "contract",
        "--grid",
        "generic:2x2",
        "--h",
        "d_{1,1}",
        "--f",
        "a_{1,1}*a_{2,2} - a_{1,2}*a_{2,1}",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "a_{2,2}");
}

#[test]
fn waring_solve_and_verify() {
    let out = apolar(&[
        "waring",
        "--grid",
        "generic:1x2",
        "--f",
        "a_{1,1}*a_{1,2}",
        "--forms",
        "a_{1,1} + a_{1,2}; a_{1,1} - a_{1,2}",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["representable"], true);
    assert_eq!(v["coefficients"], serde_json::json!(["1/4", "-1/4"]));

    let out = apolar(&[
        "waring",
        "--grid",
        "generic:1x2",
        "--f",
        "a_{1,1}*a_{1,2}",
        "--forms",
        "a_{1,1}; a_{1,2}",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mode_env_and_flag_precedence() {
    let run = |envs: &[(&str, &str)], args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_apolar"));
        cmd.args(args).env_remove("APOLAR_MODE");
        for (k, v) in envs {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    };
    let args = ["hilbert", "--invariant", "det", "--n", "2"];
    let v: serde_json::Value =
        serde_json::from_slice(&run(&[("APOLAR_MODE", "mod-p")], &args).stdout).unwrap();
    assert_eq!(v["mode"], "mod-p");
    // flag beats environment
    let mut flagged = vec!["--mode", "rational"];
    flagged.extend_from_slice(&args);
    let v: serde_json::Value =
        serde_json::from_slice(&run(&[("APOLAR_MODE", "mod-p")], &flagged).stdout).unwrap();
    assert_eq!(v["mode"], "rational");
}

#[test]
fn deterministic_output() {
    let args = ["verify", "--invariant", "det", "--n", "2", "--route", "both"];
    let a = apolar(&args);
    let b = apolar(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}
