use std::process::{Command, Output};

use serde_json::Value;

fn hgtoda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgtoda")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const EVAL_F: [&str; 10] = ["eval", "f", "--type", "A2", "--lambda", "0.9+0.31i,1.3-0.27i", "--point", "0.8,0.6", "--k", "0.8"];

#[test]
fn eval_json_schema() {
    let out = hgtoda(&EVAL_F);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["errors"].as_array().map(Vec::len), Some(0));
    assert_eq!(v["params"]["type"], "A2");
    assert_eq!(v["params"]["trunc"], 40);
    assert!(v["value"]["re"].is_f64());
    assert!(v["value"]["im"].is_f64());
    assert!(v["value"]["tail_est"].as_f64().unwrap() < 1e-6);
}

#[test]
fn csv_matches_json() {
    let j = json(&hgtoda(&EVAL_F));
    let mut args = EVAL_F.to_vec();
    args.extend(["--format", "csv"]);
    let out = hgtoda(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("function,value_re,value_im,tail_est"));
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[0], "f");
    assert_eq!(fields[1].parse::<f64>().unwrap(), j["value"]["re"].as_f64().unwrap());
    assert_eq!(fields[2].parse::<f64>().unwrap(), j["value"]["im"].as_f64().unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["limit", "main", "--type", "A2", "--lambda", "0.4+0.3i,0.5-0.2i", "--point", "0.5,0.3", "--m-range", "1:4"];
    let first = hgtoda(&args);
    assert_eq!(first.status.code(), Some(0));
    for _ in 0..2 {
        assert_eq!(hgtoda(&args).stdout, first.stdout);
    }
}

#[test]
fn limit_rows() {
    let out = hgtoda(&["limit", "prop22", "--type", "A1", "--lambda", "0.7+0.2i", "--point", "0.5", "--m-range", "1:5:2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "M,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,tail_est,height,in_chamber");
    let ms: Vec<&str> = rows[1..].iter().map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(ms, ["1", "3", "5"]);
}

#[test]
fn resonance_exits_3() {
    let out = hgtoda(&["eval", "phi", "--type", "A1", "--lambda", "2", "--point", "1", "--k", "0.7"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert!(v["value"].is_null());
    assert_eq!(v["errors"][0]["error_kind"], "resonance");
    assert_eq!(v["errors"][0]["offending_parameter"], "lambda");
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_input_exits_2() {
    let unknown = hgtoda(&["eval", "f", "--type", "Z9", "--lambda", "1", "--point", "1", "--k", "1"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(unknown.stdout.is_empty());
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("--type"));
    let rank = hgtoda(&["eval", "f", "--type", "A2", "--lambda", "1", "--point", "1,1", "--k", "1"]);
    assert_eq!(rank.status.code(), Some(2));
    let missing = hgtoda(&["eval", "f", "--type", "A1"]);
    assert_eq!(missing.status.code(), Some(2));
    let malformed = hgtoda(&["eval", "f", "--type", "A1", "--lambda", "1+i2", "--point", "1", "--k", "1"]);
    assert_eq!(malformed.status.code(), Some(2));
    let zero_n = hgtoda(&["eval", "f", "--type", "A1", "--lambda", "1", "--point", "1", "--k", "1", "--trunc", "0"]);
    assert_eq!(zero_n.status.code(), Some(2));
}

#[test]
fn roots_info() {
    let out = hgtoda(&["roots", "info", "--type", "B2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "roots info");
    assert!(v.to_string().contains("longest_word"));
}
