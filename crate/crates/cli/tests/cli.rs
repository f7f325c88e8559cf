use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcrfields")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn tensor_decompose_text() {
    let o = run(&["tensor-decompose", "300", "110"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(410) ⊕ (311)");
}

#[test]
fn tensor_decompose_json() {
    let v = json(&["tensor-decompose", "100", "110"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["nu"], serde_json::json!([2, 1, 0, 0]));
    assert_eq!(rows[1]["nu"], serde_json::json!([1, 1, 1, 0]));
    assert_eq!(rows[1]["mult"], 1);
}

#[test]
fn kernel_dim_and_gt_count() {
    assert_eq!(stdout(&run(&["kernel-dim", "300", "1"])).trim(), "84");
    assert_eq!(stdout(&run(&["kernel-dim", "3,1,1", "1"])).trim(), "140");
    assert_eq!(stdout(&run(&["gt-patterns", "311", "--count"])).trim(), "36");
    assert_eq!(json(&["gt-patterns", "110"])["count"], 6);
}

#[test]
fn spectrum_is_six_families() {
    let v = json(&["spectrum", "--degree", "6"]);
    for label in v["labels"].as_array().unwrap() {
        assert!(label["family"].is_object(), "{label}");
    }
}

#[test]
fn basis_json_lists_fields() {
    let v = json(&["basis", "100", "1"]);
    assert_eq!(v["fields"].as_array().unwrap().len(), 20);
    assert_eq!(v["label"], serde_json::json!([2, 1, 0, 0]));
}

#[test]
fn diagram_passes_and_renders_dot() {
    let o = run(&["verify-diagram", "1", "--m", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stderr.is_empty());
    let dot = stdout(&run(&["verify-diagram", "5b", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn howe_check_exit_codes() {
    let v = json(&["howe-check", "100", "--cutoff", "3"]);
    assert_eq!(v["saturated"], true);
    assert_eq!(run(&["howe-check", "311", "--cutoff", "3", "--witness", "0"]).status.code(), Some(1));
}

#[test]
fn real_slice_and_conformal_table() {
    let text = stdout(&run(&["real-slice", "--signature", "euclidean"]));
    assert!(text.contains("x1^2 + x2^2 + x3^2 + x4^2 + x5^2 + x6^2"));
    let v = json(&["real-slice", "--signature", "split", "--point", "1,0,0,0,0,0"]);
    assert_eq!(v[0]["r2_at_point"], "1");
    let table = json(&["conformal-table"]);
    let invariant: Vec<_> = table
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["conformally_invariant"] == true)
        .map(|r| r["operator"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(invariant, ["D^300", "D^333", "D^100", "D^111"]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["kernel-dim", "399", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kernel-dim", "300", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["verify-diagram", "7"]).status.code(), Some(2));
    assert_eq!(run(&["real-slice", "--signature", "split", "--point", "1,2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["spectrum", "--degree", "5", "--format", "json"]);
    let b = run(&["spectrum", "--degree", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify-diagram", "2", "--format", "json"]);
    let b = run(&["verify-diagram", "2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
