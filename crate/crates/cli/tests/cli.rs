use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn cering(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cering")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = cering(&all);
    (code(&out), serde_json::from_str(&stdout(&out)).expect("json output"))
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn validate_gallery_grassmann() {
    let out = cering(&["validate", "--gallery", "grassmann", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("valid"));
}

#[test]
fn validate_reports_broken_associativity() {
    // a·a = b, a·b = a, b·a = 0
    let f = temp_json(
        r#"{"field":{"kind":"Q"},"dim":3,"basis":["1","a","b"],"one":["1","0","0"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[0,2,2,"1"],[1,0,1,"1"],[2,0,2,"1"],[1,1,2,"1"],[1,2,1,"1"]]}"#,
    );
    let path = f.path().to_str().unwrap();
    let out = cering(&["validate", "--input", path]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("associativity (i=1, j=1, k=1)"));
    let (c, v) = json(&["validate", "--input", path]);
    assert_eq!(c, 1);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["kind"], "associativity");
}

#[test]
fn malformed_json_is_a_parse_error() {
    let f = temp_json("{\"field\": {\"kind\": \"Q\"}, \"dim\": ");
    let out = cering(&["validate", "--input", f.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&cering(&["report"])), 2);
    assert_eq!(code(&cering(&["report", "--gallery", "grassmann"])), 2);
    assert_eq!(code(&cering(&["report", "--gallery", "nonsense", "--n", "2"])), 2);
    assert_eq!(code(&cering(&["endring", "2:x"])), 2);
    assert_eq!(code(&cering(&["report", "--gallery", "grassmann", "--n", "2", "--field", "F4"])), 2);
}

#[test]
fn report_rank3_t() {
    let (c, v) = json(&["report", "--gallery", "rank3", "--kind", "T"]);
    assert_eq!(c, 0);
    let r = &v["report"];
    assert_eq!(r["decision"], "false");
    // the witness spans the minimal right ideal M = Q e23
    assert_eq!(r["witness_failure"], serde_json::json!(["0", "0", "0", "1"]));
    assert_eq!(r["invariants"]["quotient_commutative"], true);
}

#[test]
fn report_quaternion_group_algebra_over_f2() {
    let (c, v) = json(&["report", "--gallery", "group-algebra", "--group", "q8", "--field", "F2"]);
    assert_eq!(c, 0);
    let r = &v["report"];
    assert_eq!(r["decision"], "true");
    assert_eq!(r["method"], "both");
    assert_eq!(r["prop34"]["quotient_commutative"], "true");
    assert_eq!(r["prop34"]["every_min_ideal_meets_center"], "true");
    assert_eq!(r["commutative"], false);
}

#[test]
fn report_grassmann_three() {
    let (c, v) = json(&["report", "--gallery", "grassmann", "--n", "3", "--field", "Q"]);
    assert_eq!(c, 0);
    assert_eq!(v["report"]["decision"], "true");
    assert_eq!(v["report"]["prop34"]["socles_equal"], "false");
    assert_eq!(v["report"]["invariants"]["center"]["dim"], 5);
}

#[test]
fn report_rank3_s_with_negative_parameter() {
    let (c, v) = json(&["report", "--gallery", "rank3", "--kind", "S", "--k", "-2"]);
    assert_eq!(c, 0);
    assert_eq!(v["report"]["decision"], "true");
}

#[test]
fn undecided_is_a_result() {
    // Q8 over F3 is semisimple and noncommutative; tiny bound leaves the scan out
    let (c, v) = json(&["report", "--gallery", "group-algebra", "--group", "q8", "--field", "F3", "--bound", "10"]);
    assert_eq!(c, 0);
    assert_eq!(v["report"]["decision"], "false");
    assert_eq!(v["report"]["method"], "subspace_criterion");
}

#[test]
fn endring_examples() {
    for (group, ce) in [("2:2", true), ("2:1,2:1", false), ("2:1,3:1", true), ("3:1,3:1", false)] {
        let (c, v) = json(&["endring", group]);
        assert_eq!(c, 0, "{group}");
        assert_eq!(v["ce"], if ce { "true" } else { "false" }, "{group}");
        assert_eq!(v["commutative"], ce, "{group}");
        assert_eq!(v["agree"], true, "{group}");
    }
}

#[test]
fn endring_bound_exceeded() {
    let out = cering(&["endring", "2:7", "--bound", "100"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bound 128"));
}

#[test]
fn emit_round_trips_through_input() {
    let emitted = cering(&["emit", "--gallery", "group-algebra", "--group", "s3", "--field", "F3"]);
    assert_eq!(code(&emitted), 0);
    let text = stdout(&emitted);
    let f = temp_json(&text);
    let again = cering(&["emit", "--input", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
    let a = json(&["report", "--gallery", "group-algebra", "--group", "s3", "--field", "F3"]).1;
    let b = json(&["report", "--input", f.path().to_str().unwrap()]).1;
    assert_eq!(a["report"], b["report"]);
}

#[test]
fn reports_are_deterministic() {
    let args = ["report", "--gallery", "upper-triangular", "--n", "3", "--field", "F2", "--format", "json"];
    let a = cering(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let b = cering(&with_jobs);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains('\r'));
}

#[test]
fn suite_passes() {
    let out = cering(&["suite"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("10 of 10 rows passed"));
}

#[test]
fn suite_with_tiny_bound_fails_exhaustive_rows() {
    let (c, v) = json(&["paper-suite", "--bound", "10"]);
    assert_eq!(c, 1);
    assert_eq!(v["passed"], false);
    let status = |id: u64| v["rows"].as_array().unwrap().iter().find(|r| r["id"] == id).unwrap()["status"].clone();
    assert_eq!(status(1), "undecided");
    assert_eq!(status(3), "pass");
}
