use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2flag"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2flag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn normal_metric_on_the_short_root_flag() {
    let v = json(&["metric", "--theta", "a2", "--mu", "1,1,1"]);
    assert_eq!(v["command"], "metric");
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["go"], true);
    assert_eq!(v["result"]["oracle"]["agrees"], true);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(run(&["ricci", "--mu", "1,x,2"]).status.code(), Some(2));
    assert_eq!(run(&["flow", "--init", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["darboux", "--max-degree", "3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    assert_eq!(run(&["ricci", "--mu", "1,-1,2"]).status.code(), Some(3));
    assert_eq!(run(&["metric", "--theta", "a2", "--mu", "1,1"]).status.code(), Some(3));
    assert_eq!(run(&["equilibria", "--frame", "mu"]).status.code(), Some(3));
    assert_eq!(run(&["flags", "--format", "csv"]).status.code(), Some(3));
}

#[test]
fn verify_reports_the_jacobi_failure() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["jacobi"]);
    assert_eq!(v["result"]["checks"][0]["failures"], 72);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["metric", "--theta", "empty", "--mu", "1,1,1,1,1,1", "--offdiag", "1/3,-1/3,1/3"][..],
        &["flow", "--init", "0.2,0.1,1", "--t-end", "5", "--samples", "6"],
        &["darboux"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn darboux_search_finds_nine_pairs() {
    let v = json(&["darboux"]);
    let r = &v["result"];
    assert_eq!(r["pairs"].as_array().unwrap().len(), 9);
    assert_eq!(r["complete"], true);
    assert_eq!(r["all_verified"], true);
}

#[test]
fn ricci_reports_the_rescaled_relation() {
    let v = json(&["ricci", "--mu", "1,2,3"]);
    assert_eq!(v["result"]["rescaled_check"], true);
    assert_eq!(v["result"]["u_vanishes"], false);
    let v = json(&["ricci", "--mu", "2,2,2"]);
    assert_eq!(v["result"]["u_vanishes"], true);
}

#[test]
fn flow_writes_csv_to_file() {
    let path = scratch("traj.csv");
    let p = path.to_str().unwrap();
    let v = json(&["flow", "--init", "0.1,0.1,1", "--t-end", "2", "--samples", "5", "--out", p]);
    assert_eq!(v["result"]["out"], p);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,c1,c2,c3,frame"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.ends_with(",xyz")));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let path = scratch("metric.conf");
    std::fs::write(&path, "# defaults\ntheta=a2\nmu=1,1,1\n\nformat=json\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["metric", "--config", p]);
    assert_eq!(v["config"]["mu"], serde_json::json!(["1", "1", "1"]));
    let v = json(&["metric", "--config", p, "--mu", "1,2,3"]);
    assert_eq!(v["config"]["mu"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(v["result"]["go"], false);
}

#[test]
fn pretty_output_honours_no_color() {
    let out = run(&["ricci", "--mu", "1,1,1", "--format", "pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\x1b'));
    assert!(text.contains("command: ricci"));
    let colored = Command::new(env!("CARGO_BIN_EXE_g2flag"))
        .args(["ricci", "--mu", "1,1,1", "--format", "pretty"])
        .env_remove("NO_COLOR")
        .output()
        .unwrap();
    assert!(String::from_utf8(colored.stdout).unwrap().contains('\x1b'));
}

#[test]
fn csv_echoes_config_on_stderr() {
    let out = run(&["equilibria", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.lines().any(|l| l == "# frame=xyz"));
    assert!(!out.stdout.is_empty());
}
