use std::process::{Command, Output};

use serde_json::Value;

fn lsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsg")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// The summary line of a `--json` run.
fn summary(out: &Output) -> Value {
    let text = stdout(out);
    serde_json::from_str(text.lines().last().expect("at least one line")).unwrap()
}

#[test]
fn lucas_seq_prints_tsv() {
    let out = lsg(&["lucas", "seq", "1", "-1", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n\tU_n\tV_n");
    assert_eq!(rows[1], "0\t0\t2");
    assert_eq!(rows[6], "5\t5\t11");
}

#[test]
fn lucas_rank_reports_rho_and_nu() {
    let out = lsg(&["--json", "lucas", "rank", "1", "-1", "5"]);
    assert!(out.status.success());
    let s = summary(&out);
    assert_eq!(s["result"]["rho"], 5);
    assert_eq!(s["result"]["nu"], 1);
}

#[test]
fn classify_local_emits_descriptor_and_case() {
    let out = lsg(&["--json", "classify", "local", "3", "1", "5", "1", "--verify", "100"]);
    assert!(out.status.success());
    let r = &summary(&out)["result"];
    assert_eq!(r["kind"], "scaled");
    assert_eq!(r["d"], 5);
    assert_eq!(r["generators"], serde_json::json!([5]));
    assert_eq!(r["case"], "regular/odd-prime");
}

#[test]
fn classify_global_nonlocal_example() {
    let out = lsg(&["--json", "classify", "global", "18", "8", "1/96", "--verify", "200"]);
    assert!(out.status.success());
    let r = &summary(&out)["result"];
    assert_eq!(r["semigroup"], "<6,8,10>");
    assert_eq!(r["frobenius"], Value::Null);
}

#[test]
fn negative_parameters_are_accepted() {
    let out = lsg(&["classify", "global", "-3", "-5", "-1/4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn expsg_reads_matrix_file() {
    let dir = std::env::temp_dir().join(format!("lsg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, r#"{"entries": [["1", "1/2"], ["0", "1"]]}"#).unwrap();
    let out = lsg(&["--json", "expsg", "--matrix", path.to_str().unwrap(), "--limit", "20", "--exact"]);
    assert!(out.status.success());
    let r = &summary(&out)["result"];
    let evens: Vec<u64> = (0..=20).step_by(2).collect();
    assert_eq!(r["members"], serde_json::json!(evens));
    assert_eq!(r["semigroup"], "<2>");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn realize_round_trips() {
    let out = lsg(&["realize", "18", "8", "1/96"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS brute force round trip"));
}

#[test]
fn check_counterexample_is_not_realizable() {
    let out = lsg(&["--json", "check", "5", "7", "16", "18"]);
    assert!(out.status.success());
    let r = &summary(&out)["result"];
    assert_eq!(r["small_elements"], serde_json::json!([5, 7, 10, 12]));
    assert_eq!(r["lonely"], serde_json::json!([5, 7, 10, 12]));
    assert_eq!(r["verdict"]["verdict"], "no");
}

#[test]
fn pipelines_pass() {
    for args in [&["tables", "1"][..], &["tables", "2"], &["tables", "3"], &["counterexample"], &["nonlocal"]] {
        let out = lsg(args);
        assert!(out.status.success(), "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn sweep_on_small_grid_covers_every_case() {
    let out = lsg(&["--json", "sweep", "--max-p", "6", "--max-q", "9", "--max-prime", "5", "--max-r", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(summary(&out)["first_failure"], Value::Null);
}

#[test]
fn failing_report_exits_one_with_first_failure() {
    // Too small to reach the steep and balanced cases.
    let out = lsg(&["--json", "sweep", "--max-p", "1", "--max-q", "1", "--max-prime", "3", "--max-r", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(summary(&out)["first_failure"].as_str().unwrap().starts_with("case "));
}

#[test]
fn bad_input_exits_two() {
    let out = lsg(&["lucas", "rank", "2", "4", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lsg(&["classify", "local", "1", "1", "4", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
