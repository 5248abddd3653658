use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ternexp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn rigorous_showcase() {
    let o = run(&["solve", "3", "5", "2", "--rigorous"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("N(3,5,2) = 3 (unconditional)\n"), "{text}");
    assert!(text.contains("cap 27097"));
    assert!(text.contains("3^1 + 5^3 = 2^7"));
}

#[test]
fn parity_instance_has_no_solutions() {
    let o = run(&["solve", "3", "5", "7", "--cap", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no solutions"));
}

#[test]
fn exit_codes() {
    let o = run(&["solve", "4", "6", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coprime"));
    assert_eq!(run(&["solve", "1", "3", "5"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "2", "3", "5", "--cap", "0"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "2", "3", "5", "--cap", "5", "--rigorous"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "2", "3", "11", "--rigorous"]).status.code(), Some(3));
    assert_eq!(run(&["pillai", "4", "6", "3", "1"]).status.code(), Some(2));
    assert_eq!(run(&["pillai", "2", "3", "3", "2"]).status.code(), Some(2));
}

#[test]
fn json_output_is_stable() {
    let args = ["solve", "2", "3", "5", "--cap", "200", "--json"];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["N"], 2);
    assert_eq!(v["solutions"], serde_json::json!([[1, 1, 1], [4, 2, 2]]));
    assert_eq!(v["instance"], serde_json::json!({"a": 2, "b": 3, "c": 5}));
}

#[test]
fn big_bases_are_accepted() {
    let v = json(&["bound", "2", "3", "1000000000000000000000000000001", "--json"]);
    assert_eq!(v["max_base"], "1000000000000000000000000000001");
    assert!(v["bound"].as_u64().unwrap() > 6500 * 69 * 69 * 69);
}

#[test]
fn bound_report() {
    let v = json(&["bound", "3", "5", "2", "--json"]);
    assert_eq!(v["bound"], 27097);
    assert_eq!(v["small_term_bound"], 12078);
}

#[test]
fn thresholds_all_hold() {
    let o = run(&["thresholds"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.trim_end().ends_with("holds")).count(), 4, "{text}");
}

#[test]
fn certify_showcase() {
    let o = run(&["certify", "3", "5", "2", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order data Z1 = 1, n1 = 2, delta1 = -1, f = 1"));
    let v = json(&["certify", "3", "5", "2", "--cap", "100", "--json"]);
    assert_eq!(v["form"], serde_json::json!({"A": 2, "B": 3, "C": 5, "lambda": -1, "perm": "cab"}));
    let kinds: Vec<_> = v["certificates"].as_array().unwrap().iter().map(|c| c["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"pair_congruence"));
    assert!(kinds.contains(&"minimal_level_count"));
    assert!(kinds.contains(&"gcd_chain"));
    assert!(v["certificates"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn pillai_lists_two_solutions() {
    let o = run(&["pillai", "3", "2", "1", "-1", "--cap", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2 solutions"));
    assert!(text.contains("(m, n) = (2, 3)"));
}

#[test]
fn survey_resumes_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let out = out.to_str().unwrap();
    let first = json(&["survey", "--max", "9", "--out", out, "--stop-after", "10", "--chunk-size", "4", "--json"]);
    assert_eq!(first["complete"], false);
    let second = json(&["survey", "--max", "9", "--out", out, "--workers", "2", "--json"]);
    assert_eq!(second["complete"], true);
    assert_eq!(second["started_at"], 10);
    assert_eq!(second["summary"]["max_n"], 3);

    let o = run(&["survey", "--max", "9", "--cap", "50", "--out", out]);
    assert_eq!(o.status.code(), Some(2), "config change must be refused");
}
