use std::process::{Command, Output};

use serde_json::Value;

fn superfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superfock")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = superfock(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), value)
}

#[test]
fn classify_check_passing_weight() {
    let (code, v) = json(&["classify", "check", "1,2;0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "superfock/1");
    assert_eq!(v["verdict"]["passes_I"], true);
    assert_eq!(v["verdict"]["passes_II"], true);
    assert_eq!(v["verdict"]["d"], 1);
    assert_eq!(v["verdict"]["params"]["L"], 2);
    assert_eq!(v["verdict"]["params"]["i"], serde_json::json!([1, 0]));
}

#[test]
fn classify_check_failing_weight_names_the_condition() {
    let (code, v) = json(&["classify", "check", "1,2;-1,0"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"]["passes_II"], false);
    let failure = v["failures"][0].as_str().unwrap();
    assert!(failure.contains("(II) λ_1 + μ_1 ≥ d"), "{failure}");
}

#[test]
fn highest_weight_side() {
    let (code, v) = json(&["classify", "check", "-1,-2;0,0", "--highest"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["side"], "highest");
    let (code, _) = json(&["classify", "check", "1,2;0,0", "--highest"]);
    assert_eq!(code, 1);
}

#[test]
fn primitive_with_check() {
    let (code, v) = json(&["primitive", "-m", "1", "-n", "1", "--odd", "-L", "2", "--i", "1", "--j", "1", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(v["weight"]["string"], "(2;0)");
    assert_eq!(v["predicted_weight"]["string"], "(2;0)");
    assert_eq!(v["primitivity"]["passes"], true);
    let roots = v["primitivity"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 5);
    assert!(roots.iter().all(|r| r["killed"] == true));
}

#[test]
fn primitive_half_integer_weight() {
    let (code, v) = json(&["primitive", "-m", "2", "-n", "1", "-L", "3", "--i", "1,0", "--j", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["weight"]["string"], "(3/2,5/2;-1/2)");
}

#[test]
fn enumerate_counts_and_round_trips() {
    let (code, v) = json(&["classify", "enumerate", "-m", "1", "-n", "1", "--bound", "2", "--construct"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 9);
    assert_eq!(v["tally"]["constructible"], 5);
    assert_eq!(v["tally"]["trivial"], 1);
    assert_eq!(v["tally"]["not constructed"], 3);
}

#[test]
fn lemma42_chain() {
    let (code, v) = json(&["lemma42", "1,1;0,0", "-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["product"], "1");
    assert_eq!(v["report"]["v_k_nonzero"], true);
    let (code, v) = json(&["lemma42", "1,1;-1,-1", "-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["product"], "0");
    assert_eq!(v["report"]["v_k_nonzero"], false);
}

#[test]
fn verify_homomorphism_small() {
    let (code, v) = json(&["verify-homomorphism", "-m", "1", "-n", "1", "--odd", "-L", "2", "-D", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["relations"]["checked"], v["relations"]["passed"]);
    assert_eq!(v["homomorphism"]["odd-odd"]["failures"], serde_json::json!([]));
}

#[test]
fn roots_listing() {
    let (code, v) = json(&["roots", "-m", "2", "-n", "1", "--odd"]);
    assert_eq!(code, 0);
    assert_eq!(v["positive"].as_array().unwrap().len(), 11);
    assert_eq!(v["negative"][0]["root"], "-e1+e2");
}

#[test]
fn json_is_deterministic_and_untimed_by_default() {
    let args = ["classify", "enumerate", "-m", "2", "-n", "1", "--bound", "2", "--construct", "--format", "json"];
    let a = superfock(&args).stdout;
    let b = superfock(&args).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert!(v.get("elapsed_ms").is_none());
    let (_, timed) = json(&["roots", "--timing"]);
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["verify-homomorphism", "-m", "1", "-n", "9", "-L", "3"],
        vec!["verify-homomorphism", "-D", "7"],
        vec!["classify", "check", "1,x"],
        vec!["classify", "check", "1;", "--odd"],
        vec!["primitive", "-L", "2", "--i", "1,1"],
        vec!["primitive", "-m", "2", "-n", "2", "-L", "4", "--i", "1,0", "--j", "2,1"],
        vec!["lemma42", "1,1;0,0", "-k", "2"],
        vec!["lemma42", "0,0;0,0", "-k", "1"],
        vec!["no-such-command"],
    ] {
        let out = superfock(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn text_mode_reports_result_line() {
    let out = superfock(&["classify", "check", "1,2;-1,0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("condition (II): fails (d = 1)"));
    assert!(text.contains("FAILED unitarity condition"));
    assert!(text.trim_end().ends_with("result: fail"));
}
