mod common;

use std::path::PathBuf;
use std::process::Command;

use common::fixture;
use ftop::cli::{run, Report, Status};
use serde_json::Value;

fn json_run(args: &[&str]) -> (i32, Report, String) {
    let mut argv = vec!["ftop", "--format", "json"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    let report: Report = serde_json::from_slice(&out).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out)));
    assert_eq!(report.exit_code, code);
    (code, report, String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

fn scratch(name: &str, body: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn validate_example1() {
    let (code, report, _) = json_run(&["validate", &path("example1.json")]);
    assert_eq!(code, 0);
    assert_eq!(report.result["valid"], true);
    assert_eq!(report.result["members"], serde_json::json!(["0", "mu", "lambda", "sigma", "1"]));
}

#[test]
fn classify_alpha_and_beta() {
    let space = path("example1.json");
    let (code, r, _) = json_run(&["classify", "set", "alpha", "--space", &space]);
    assert_eq!(code, 0);
    assert_eq!((r.result["semiopen"].clone(), r.result["open"].clone()), (Value::Bool(true), Value::Bool(false)));
    let (code, r, _) = json_run(&["classify", "set", "beta", "--space", &space]);
    assert_eq!(code, 0);
    assert_eq!(r.result["somewhat_open"], true);
    assert_eq!(r.result["semiopen"], false);
    assert_eq!(r.result["somewhat_semiopen"], true);
    assert_eq!(
        r.result["evidence"]["interior"]["breakpoints"],
        serde_json::json!([["0", "0"], ["1/2", "0"], ["1", "1"]])
    );
}

#[test]
fn classify_constants_and_members() {
    let space = path("example1.json");
    let (_, r, _) = json_run(&["classify", "set", "0", "--space", &space]);
    assert_eq!(r.result["open"], true);
    assert_eq!(r.result["somewhat_open"], true);
    let (_, r, _) = json_run(&["classify", "set", "sigma", "--space", &space]);
    assert_eq!(r.result["open"], true);
    let (code, r, err) = json_run(&["classify", "set", "gamma", "--space", &space]);
    assert_eq!(code, 2);
    assert_eq!(r.result["code"], "unresolved-name");
    assert!(err.contains("gamma"));
}

#[test]
fn missing_top_is_a_negative_verdict() {
    let doc = scratch(
        "no_top.json",
        r#"{"kind": "finite", "universe": ["a"], "sets": {"h": {"a": "1/2"}},
            "topology": ["0", "h"], "topology_is": "complete"}"#,
    );
    let (code, r, _) = json_run(&["validate", &doc]);
    assert_eq!(code, 1);
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.result["valid"], false);
    assert_eq!(r.result["violation"]["axiom"], "missing_top");
}

#[test]
fn float_literal_is_an_input_error() {
    let doc = scratch(
        "float.json",
        r#"{"kind": "finite", "universe": ["a"], "sets": {"h": {"a": 0.5}},
            "topology": ["h"], "topology_is": "subbasis"}"#,
    );
    let (code, r, err) = json_run(&["validate", &doc]);
    assert_eq!(code, 2);
    assert_eq!(r.result["code"], "float-literal");
    assert!(err.contains("floats forbidden; write 1/2"), "{err}");
}

#[test]
fn classify_function_fixture() {
    let (code, r, _) = json_run(&["classify", "fn", "--fn", &path("collapse_fn.json")]);
    assert_eq!(code, 0);
    let cont = &r.result["continuity"];
    assert_eq!(cont["fuzzy_continuous"]["holds"], false);
    assert_eq!(cont["fuzzy_continuous"]["witness"]["transported"], serde_json::json!({"a": "1/2", "b": "1/2"}));
    assert_eq!(cont["fuzzy_semicontinuous"]["holds"], true);
    assert_eq!(cont["somewhat_fuzzy_continuous"]["holds"], true);
    assert_eq!(r.result["openness"]["somewhat_fuzzy_open"]["holds"], false);
}

#[test]
fn search_reports_witness_or_absence() {
    let space = path("two_point.json");
    let (code, r, _) = json_run(&["search", "--target", "semiopen-not-open", "--space", &space, "--grid", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["witness"], serde_json::json!({"a": "0", "b": "1/2"}));
    assert_eq!(r.result["classification"]["semiopen"], true);
    assert_eq!(r.result["classification"]["open"], false);

    let (code, r, _) = json_run(&["search", "--target", "somewhat-open-not-semiopen", "--space", &space, "--grid", "2"]);
    assert_eq!(code, 2);
    assert_eq!(r.result["code"], "off-grid");
    assert!(r.result["message"].as_str().unwrap().contains('6'));

    let indiscrete = scratch(
        "indiscrete.json",
        r#"{"kind": "finite", "universe": ["a", "b"], "sets": {},
            "topology": ["0", "1"], "topology_is": "complete"}"#,
    );
    let (code, r, _) = json_run(&["search", "--target", "semiopen-not-open", "--space", &indiscrete, "--grid", "1"]);
    assert_eq!(code, 1);
    assert_eq!(r.result["found"], false);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--seeds", "200", "--universe-size", "3", "--grid", "3"];
    let (code, r, _) = json_run(&args);
    assert_eq!(code, 0);
    assert_eq!(r.result["passed"], true);
    assert_eq!(r.result["campaign"]["spaces_checked"], 200);
    let (_, again, _) = json_run(&args);
    assert_eq!(r.to_json(), again.to_json());
}

#[test]
fn cap_and_budget_exceeded_exit_3() {
    let (code, r, _) = json_run(&["verify", "--seeds", "5", "--universe-size", "3", "--grid", "3", "--cap", "2"]);
    assert_eq!(code, 3);
    assert_eq!(r.result["code"], "cap-exceeded");
    let (code, r, _) = json_run(&["verify", "--seeds", "1", "--universe-size", "4", "--grid", "4", "--budget", "10"]);
    assert_eq!(code, 3);
    assert_eq!(r.result["code"], "budget-exceeded");
}

#[test]
fn timing_is_opt_in() {
    let (_, r, _) = json_run(&["validate", &path("example1.json")]);
    assert_eq!(r.elapsed_ms, None);
    let (_, r, _) = json_run(&["--timing", "validate", &path("example1.json")]);
    assert!(r.elapsed_ms.is_some());
}

#[test]
fn binary_text_output_and_env_cap() {
    let bin = env!("CARGO_BIN_EXE_ftop");
    let out = Command::new(bin)
        .args(["classify", "set", "alpha", "--space", &path("example1.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("  semiopen: true\n"), "{text}");
    assert!(text.contains("  open: false\n"), "{text}");

    let out = Command::new(bin)
        .args(["validate", &path("two_point.json")])
        .env("FTOP_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap-exceeded"));

    let out = Command::new(bin).args(["validate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
