use std::process::{Command, Output};

use serde_json::Value;
use weylop::scalar::ScalarExpr;
use weylop::weyl::{WeylIndex, WeylOp};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylop")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn result_op(out: &Output) -> WeylOp {
    serde_json::from_value(json(out)["result"].clone()).unwrap()
}

fn i_hbar(k: i64) -> ScalarExpr {
    &ScalarExpr::int(k) * &ScalarExpr::i_hbar()
}

#[test]
fn canonical_commutator() {
    let out = run(&["commute", "T:0,1", "T:1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result_op(&out), WeylOp::single(WeylIndex::new(0, 0), i_hbar(1)));
}

#[test]
fn bracket_with_p_squared() {
    let out = run(&["commute", "--left", "T:-1,1", "--right", "T:2,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(result_op(&out), WeylOp::single(WeylIndex::new(0, 0), i_hbar(2)));
}

#[test]
fn header_records_the_run() {
    let v = json(&run(&["to-weyl", "-1", "2"]));
    let h = &v["header"];
    assert_eq!(h["tool"], "weylop");
    assert_eq!(h["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(h["schema_version"], 1);
    assert_eq!(h["run_config"]["command"]["command"], "to-weyl");
    assert_eq!(h["run_config"]["command"]["a"], -1);
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "quadratic", "--order", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["commute", "T:1,1"][..],
        &["commute", "T:1", "T:0,1"],
        &["to-normal", "T:-1,-1"],
        &["solve", "cubic"],
        &["solve", "linear", "--seed-override", "1,x=2"],
        &["transform", "T:0,1", "--transform", "custom", "--a", "2", "--b", "1", "--c", "0", "--d", "0"],
        &["ermakov", "--steps", "10"],
        &["verify", "--suite", "algebra", "--assign", "nope=1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verification_failure_exits_1_with_report() {
    let out = run(&["verify", "--suite", "algebra", "--dim", "32", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["passed"], false);
    assert!(v["result"]["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail"));
}

#[test]
fn verify_algebra_passes() {
    let out = run(&["verify", "--suite", "algebra", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for c in v["result"]["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
        assert!(c.get("check").is_some() && c.get("residual").is_some() && c.get("metadata").is_some());
    }
}

#[test]
fn quartic_base_case() {
    let v = json(&run(&["solve", "quartic", "--order", "4"]));
    let r = &v["result"];
    assert_eq!(r["scheme"], "C_MN");
    let c00 = r["entries"].as_array().unwrap().iter().find(|e| e["idx"] == serde_json::json!([0, 0])).unwrap();
    let c: ScalarExpr = serde_json::from_value(c00["coeff"].clone()).unwrap();
    assert_eq!(c, ScalarExpr::one());
    assert!(r["tables"]["A"]["entries"].is_array());
}

#[test]
fn hbar_substitution_and_csv() {
    let out = run(&["--format", "csv", "solve", "powerlaw", "--L", "2", "--order", "2", "--hbar", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i0,i1,coeff");
    assert!(lines.contains(&"-5,5,1/5"));
    assert!(!text.contains("hbar"));
}

#[test]
fn liouville_matches_minimal() {
    let out = run(&["liouville", "--kmax", "2", "--compare-minimal"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["comparison"]["passed"], true);
}

#[test]
fn transform_reports_truncation() {
    let out = run(&[
        "transform",
        "T:-1,1",
        "--r-max",
        "2",
        "--assign",
        "rho=1.3",
        "--assign",
        "rhodot=1/5",
        "--assign",
        "mu=1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let t = &v["result"]["truncation"];
    assert_eq!(t["r_max"], 2);
    assert!(t["dropped_band_estimate"].as_f64().unwrap() > 0.0);
    let op: WeylOp = serde_json::from_value(v["result"].clone()).unwrap();
    assert!(!op.coeff(&WeylIndex::new(-1, 1)).is_zero());
    assert!(op.keys().all(|k| k.m >= -2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("weylop-cli-test-{}.json", std::process::id()));
    let out = run(&["--output", path.to_str().unwrap(), "reorder", "2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 2);
    std::fs::remove_file(path).ok();
}

#[test]
fn ermakov_free_flow() {
    let v = json(&run(&["ermakov", "--steps", "1000"]));
    let s = &v["result"]["solution"];
    let rho = s["rho"].as_array().unwrap();
    let last = rho.last().unwrap().as_f64().unwrap();
    assert!((last - 5f64.sqrt()).abs() < 1e-8);
    assert_eq!(v["result"]["tau_increasing"], true);
}
