//! End-to-end tests of the `mband` binary: exit codes, JSON schemas,
//! diagnostics, and checkpointed hunts.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mband(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mband"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_exit_codes_and_schema() {
    let dir = tempfile::tempdir().unwrap();
    let ex2 = write(dir.path(), "ex2.txt", "3\n5 -1 -1\n0 5 0\n0 -1 5\n");
    let ex1 = write(dir.path(), "ex1.txt", "3\n1 1 1\n0 1 0\n0 1 1\n");
    let empty = write(dir.path(), "empty.txt", "");

    let out = mband(&["classify", &ex2]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["is_z"], Value::Bool(true));
    assert_eq!(v["is_m"], Value::Bool(true));
    assert_eq!(v["method_verdicts"]["PRINCIPAL_MINORS"], Value::Bool(true));

    let out = mband(&["classify", &ex1]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["is_z"], Value::Bool(false));
    assert_eq!(v["is_m"], Value::Bool(false));

    let out = mband(&["classify", &empty]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "diagnostic missing: {err}");
}

#[test]
fn invert_cross_checks_and_explains() {
    let dir = tempfile::tempdir().unwrap();
    let ex2 = write(dir.path(), "ex2.txt", "3\n5 -1 -1\n0 5 0\n0 -1 5\n");
    let ex1 = write(dir.path(), "ex1.txt", "3\n1 1 1\n0 1 0\n0 1 1\n");
    let singular = write(dir.path(), "sing.txt", "2\n1 1\n1 1\n");

    let out = mband(&["invert", &ex2, "--method", "both", "--decimal", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["match"], Value::Bool(true));
    assert_eq!(v["inverse"]["entries"][0][1], "6/125");
    assert_eq!(v["inverse"]["entries"][0][2], "1/25");
    assert_eq!(v["decimal"][0], serde_json::json!(["0.200", "0.048", "0.040"]));

    let out = mband(&["invert", &ex1, "--explain", "1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["explain"]["value"], "0");
    let terms = v["explain"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["value"], "-1");
    assert_eq!(terms[0]["path"], serde_json::json!([1, 2]));
    assert_eq!(terms[1]["value"], "1");
    assert_eq!(terms[1]["path"], serde_json::json!([1, 3, 2]));

    let out = mband(&["invert", &singular]);
    assert_eq!(out.status.code(), Some(1));

    // method agreement across separate invocations
    let direct = stdout_json(&mband(&["invert", &ex1, "--method", "direct"]));
    let maybee = stdout_json(&mband(&["invert", &ex1, "--method", "maybee"]));
    assert_eq!(direct["inverse"], maybee["inverse"]);
}

#[test]
fn invert_path_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // D(A) has two paths from v1 to v2
    let ex1 = write(dir.path(), "ex1.txt", "3\n1 1 1\n0 1 0\n0 1 1\n");
    let out = mband(&["invert", &ex1, "--method", "maybee", "--path-cap", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_mband"))
        .args(["invert", &ex1, "--method", "maybee"])
        .env("MBAND_PATH_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn signs_predicts_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let ex2 = write(dir.path(), "ex2.txt", "3\n5 -1 -1\n0 5 0\n0 -1 5\n");
    let ex1 = write(dir.path(), "ex1.txt", "3\n1 1 1\n0 1 0\n0 1 1\n");
    let diag = write(dir.path(), "diag.txt", "2\n2 0\n0 3\n");

    let out = mband(&["signs", &ex2, "--verify", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["match"], Value::Bool(true));
    assert_eq!(
        v["predicted"]["signs"],
        serde_json::json!([["+", "+", "+"], ["0", "+", "0"], ["0", "+", "+"]])
    );
    assert!(v["dot"].as_str().unwrap().contains("v1 -> v2;"));

    let out = mband(&["signs", &ex1]);
    assert_eq!(out.status.code(), Some(1));

    let v = stdout_json(&mband(&["signs", &diag]));
    assert_eq!(
        v["predicted"]["signs"],
        serde_json::json!([["+", "0"], ["0", "+"]])
    );
}

#[test]
fn check_subcommand_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let a_inst = write(
        dir.path(),
        "a.txt",
        "4\n2 -1 0 0\n0 2 0 0\n0 -1 2 -1\n0 0 0 2\n",
    );
    let b_inst = write(
        dir.path(),
        "b.txt",
        "4\n2 -1 0 0\n-1 2 0 0\n0 -1 2 -1\n0 0 0 2\n",
    );
    let small = write(dir.path(), "small.txt", "3\n2 -1 0\n0 2 0\n0 0 2\n");

    let out = mband(&["check", "tri", &a_inst]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["a_is_tridiagonal"], Value::Bool(true));
    assert_eq!(v["verdict"]["ainv_is_tridiagonal"], Value::Bool(true));
    assert_eq!(v["lemma"]["zero_propagation_holds"], Value::Bool(true));

    // condition violated, inverse not tridiagonal, equivalence intact: exit 0
    let out = mband(&["check", "tri", &b_inst]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["ainv_is_tridiagonal"], Value::Bool(false));
    let sub = &v["verdict"]["condition_reports"][0];
    assert_eq!(sub["condition_id"], "TRI_SUB");
    assert_eq!(sub["holds"], Value::Bool(false));
    assert_eq!(sub["violations"][0]["index"], 2);

    // pentadiagonal checks need order >= 4
    let out = mband(&["check", "penta", &small]);
    assert_eq!(out.status.code(), Some(2));

    // not an M-matrix: exit 1
    let ex1 = write(dir.path(), "ex1.txt", "3\n1 1 1\n0 1 0\n0 1 1\n");
    let out = mband(&["check", "tri", &ex1]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dot_subcommand_emits_graph() {
    let dir = tempfile::tempdir().unwrap();
    let ex1 = write(dir.path(), "ex1.txt", "3\n1 1 1\n0 1 0\n0 1 1\n");
    let out = mband(&["dot", &ex1]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "digraph {\n  v1 -> v2;\n  v1 -> v3;\n  v3 -> v2;\n}\n"
    );
}

#[test]
fn json_input_parses_decimals_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let json = write(
        dir.path(),
        "m.json",
        r#"{"n": 2, "entries": [[1, 0.048], [0, "1/5"]]}"#,
    );
    let v = stdout_json(&mband(&["invert", &json, "--method", "both"]));
    // inverse of [[1, 6/125], [0, 1/5]] is [[1, -6/25], [0, 5]]
    assert_eq!(v["inverse"]["entries"][0][1], "-6/25");
    assert_eq!(v["inverse"]["entries"][1][1], "5");
}

#[test]
fn hunt_exit_codes_and_checkpoint_flow() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    let cp_str = cp.to_str().unwrap();

    // order below the pentadiagonal minimum
    let out = mband(&["hunt", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // order above the exhaustive cap
    let out = mband(&["hunt", "--order", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // random mode requires a budget
    let out = mband(&["hunt", "--order", "4", "--mode", "random"]);
    assert_eq!(out.status.code(), Some(2));

    let out = mband(&["hunt", "--order", "4", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["status"], "BUDGET_REACHED");

    // interrupted run leaves a resumable checkpoint
    let out = mband(&["hunt", "--order", "4", "--budget", "5", "--checkpoint", cp_str]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "BUDGET_REACHED");
    assert_eq!(v["examined"], 5);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&cp).unwrap()).unwrap();
    assert_eq!(saved["next_index"], 5);
    assert!(saved["outcome"].is_null());

    // resumed run reaches the same terminal outcome as a fresh one
    let resumed = stdout_json(&mband(&["hunt", "--order", "4", "--checkpoint", cp_str]));
    let fresh = stdout_json(&mband(&["hunt", "--order", "4"]));
    assert_eq!(resumed, fresh);

    // the checkpoint now carries the terminal outcome; re-running is
    // idempotent even with a tiny budget
    let replay = stdout_json(&mband(&[
        "hunt", "--order", "4", "--budget", "1", "--checkpoint", cp_str,
    ]));
    assert_eq!(replay, fresh);

    // a checkpoint from different hunt parameters is rejected
    let out = mband(&["hunt", "--order", "5", "--checkpoint", cp_str]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn random_hunt_runs_with_budget_and_seed() {
    let out = mband(&[
        "hunt", "--order", "5", "--mode", "random", "--budget", "30", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mode"], "RANDOM");
    let again = stdout_json(&mband(&[
        "hunt", "--order", "5", "--mode", "random", "--budget", "30", "--seed", "7",
    ]));
    assert_eq!(v, again);
}

#[test]
fn reads_matrix_from_stdin() {
    use std::io::Write as _;
    let mut child = Command::new(env!("CARGO_BIN_EXE_mband"))
        .args(["classify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2\n2 -1\n0 3\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
