use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn waring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_waring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn waring_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_waring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_line(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("one line of output")).expect("valid JSON")
}

// f1 = x0² + x1², f2 = 2x0² + 3x1² on P¹: the summands are x0² and x1².
const BINARY_22: &str = r#"{"degrees":[2,2],"parts":[
  {"degree":2,"num_vars":2,"coeffs":[[1,0],[0,0],[1,0]]},
  {"degree":2,"num_vars":2,"coeffs":[[2,0],[0,0],[3,0]]}]}"#;

#[test]
fn perfect_reports_k_and_rejects_a_wrong_one() {
    let out = waring(&["--json", "perfect", "--n", "2", "--degrees", "3,3,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["k"], 7);
    assert_eq!(v["perfect"], true);

    let out = waring(&["perfect", "--n", "2", "--degrees", "3,3,4", "--k", "6"]);
    assert_eq!(out.status.code(), Some(2));

    let out = waring(&["--json", "perfect", "--n", "2", "--degrees", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_line(&out)["perfect"], false);
}

#[test]
fn invalid_degrees_are_validation_errors() {
    let out = waring(&["count", "--n", "2", "--degrees", "2,4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = waring(&["defect", "--n", "2", "--degrees", "0,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn defect_output_has_the_documented_fields() {
    let out = waring(&["--json", "--seed", "4", "defect", "--n", "3", "--degrees", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["defect"], 2);
    assert_eq!(v["expected"], 45);
    assert_eq!(v["dim"], 43);
    assert_eq!(v["confidence"], "probabilistic");
}

#[test]
fn count_is_reproducible_and_dumps_solutions() {
    let dir = std::env::temp_dir().join(format!("waring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("solutions.jsonl");
    let args = [
        "--json",
        "--seed",
        "11",
        "count",
        "--n",
        "2",
        "--degrees",
        "2,3,3,3",
        "--dump-solutions",
        dump.to_str().unwrap(),
    ];
    let a = waring(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let v = json_line(&a);
    assert_eq!(v["count"], 2);
    assert_eq!(v["k"], 6);
    assert_eq!(v["status"], "stabilized");
    let first = std::fs::read_to_string(&dump).unwrap();
    let b = waring(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first, std::fs::read_to_string(&dump).unwrap());

    let lines: Vec<Value> = first.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["seed"], 11);
    for sol in &lines[1..] {
        assert_eq!(sol["forms"].as_array().unwrap().len(), 6);
        assert!(sol["residual"].as_f64().unwrap() < 1e-8);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exhausted_budget_below_the_expected_count_exits_4() {
    let out = waring(&[
        "--budget-loops",
        "1",
        "--stall",
        "5",
        "count",
        "--n",
        "2",
        "--degrees",
        "2,3,3,3",
        "--expect",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn decompose_recovers_the_binary_summands() {
    let out = waring_stdin(&["--json", "decompose", "--case", "-", "--bundle", "auto"], BINARY_22);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_line(&out);
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
    let forms = v["forms"].as_array().unwrap();
    assert_eq!(forms.len(), 2);
    // Each form is a multiple of x0 or of x1.
    let mut zeros = Vec::new();
    for f in forms {
        let c: Vec<f64> = f
            .as_array()
            .unwrap()
            .iter()
            .map(|z| z[0].as_f64().unwrap().hypot(z[1].as_f64().unwrap()))
            .collect();
        let small = c.iter().position(|&x| x < 1e-10).expect("a vanishing coordinate");
        zeros.push(small);
    }
    zeros.sort();
    assert_eq!(zeros, vec![0, 1]);
}

#[test]
fn decompose_rejects_malformed_input_and_bad_bundles() {
    let out = waring_stdin(&["decompose", "--case", "-"], "{\"degrees\": [2]");
    assert_eq!(out.status.code(), Some(2));
    let out = waring_stdin(&["decompose", "--case", "-", "--bundle", "quotient:1"], BINARY_22);
    assert_eq!(out.status.code(), Some(2));
    let out = waring(&["decompose", "--case", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_fast_tier_passes() {
    let out = waring(&["--json", "table", "--rows", "4,6,16,19"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn pair_reports_the_bound() {
    let out = waring(&["--json", "pair", "--t", "3", "--count-up-to", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["degrees"], serde_json::json!([6, 7]));
    assert_eq!(v["k"], 16);
}
