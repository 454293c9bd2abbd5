use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const C4: &str = "Cl";
const C5: &str = "Dhc";
const HOUSE: &str = "Dhs";
const TWO_C4_APEX: &str = "Hl?GGV~";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_graph-lines"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn without_ms(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("ms");
    v
}

#[test]
fn fixture_graph6_is_the_two_c4_graph() {
    let out = run(&["classify", "-"], &format!("{TWO_C4_APEX}\n"));
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["hh_free"], true);
    assert_eq!(v["c4_modules"].as_array().unwrap().len(), 2);
}

#[test]
fn lines_reports_family_sizes() {
    let out = run(&["lines", "-"], &format!("{C5}\n{TWO_C4_APEX}\n"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_lines(&out);
    assert_eq!(v.len(), 2);
    assert_eq!(v[0]["line_count"], 10);
    assert_eq!((v[1]["l1"].as_u64(), v[1]["l2"].as_u64()), (Some(6), Some(2)));
    assert_eq!(v[0]["lines"].as_array().unwrap().len(), 10);
}

#[test]
fn edge_list_input() {
    let out = run(&["lines", "--format", "edges", "-"], "# square\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["graph6"], C4);
    assert_eq!(v["line_count"], 1);
    assert_eq!(v["has_universal_line"], true);
}

#[test]
fn malformed_input_exits_2() {
    for (args, input) in [
        (vec!["lines", "-"], "A`\n"),
        (vec!["check", "dbe", "-"], "B\n"),
        (vec!["lines", "--format", "edges", "-"], "0 x\n"),
        (vec!["lines", "-"], "C?\n"),
    ] {
        let out = run(&args, input);
        assert_eq!(out.status.code(), Some(2), "{args:?} {input:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["sweep", "--check", "dbe"],
        vec!["check", "dbe3", "-"],
        vec!["frobnicate"],
        vec!["sweep", "--n", "9", "--check", "dbe"],
        vec!["lines", "/nonexistent/input.g6"],
    ] {
        assert_eq!(run(&args, "").status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_reports_and_exit_codes() {
    let out = run(&["check", "dbe2", "-"], &format!("{C4}\n{C5}\n{HOUSE}\n"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_lines(&out);
    assert_eq!(v.len(), 3);
    assert_eq!(v[0]["checks"][0]["witness"]["disjunct"], "universal_edge");

    let out = run(&["check", "suite", "-"], &format!("{HOUSE}\n"));
    assert_eq!(out.status.code(), Some(0));
    let checks = json_lines(&out)[0]["checks"].as_array().unwrap().clone();
    assert_eq!(checks.len(), 15);
    let lem_1line = checks.iter().find(|c| c["name"] == "lem_1line").unwrap();
    assert_eq!(lem_1line["status"], "skipped");
}

#[test]
fn check_output_is_reproducible() {
    let input = format!("{C5}\n{TWO_C4_APEX}\n{HOUSE}\n");
    for kind in ["dbe", "dbe2", "pipeline", "suite"] {
        let a: Vec<Value> = json_lines(&run(&["check", kind, "-"], &input)).into_iter().map(without_ms).collect();
        let b: Vec<Value> = json_lines(&run(&["check", kind, "-"], &input)).into_iter().map(without_ms).collect();
        assert_eq!(a, b, "{kind}");
    }
}

#[test]
fn discharge_exit_codes() {
    // Precondition unmet: the 4-cycle has a universal edge.
    let out = run(&["discharge", "-"], &format!("{C4}\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(json_lines(&out)[0]["error"].as_str().unwrap().contains("universal"));

    let out = run(&["discharge", "-"], "Bw\n");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["certificate"]["totals"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["verification"]["ok"], true);
}

#[test]
fn reduce_prints_a_trace() {
    let out = run(&["reduce", "-"], &format!("{TWO_C4_APEX}\n"));
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert!(v["removed"].as_array().unwrap().len() >= 2);
    assert!(v["result_graph6"].is_string());
}

#[test]
fn sweep_builtin_and_stream() {
    let out = run(&["sweep", "--n", "6", "--hh-free", "--check", "pipeline", "--jobs", "2"], "");
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["graphs"], 115);
    assert_eq!(v["witnesses"], serde_json::json!([]));

    let one = without_ms(json_lines(&run(&["sweep", "--n", "6", "--check", "suite", "--jobs", "1"], ""))[0].clone());
    let many = without_ms(json_lines(&run(&["sweep", "--n", "6", "--check", "suite", "--jobs", "8"], ""))[0].clone());
    assert_eq!(one, many);

    let input = format!("{HOUSE}\n{TWO_C4_APEX}\nA`\n{C5}\n");
    let out = run(&["sweep", "--input", "-", "--hh-free", "--check", "dbe2", "--limit", "5"], &input);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["graphs"], 1);
    assert_eq!(v["errors"][0]["line"], 3);
}
