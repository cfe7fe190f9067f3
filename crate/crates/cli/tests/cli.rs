use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_implosion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn temp(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(name);
    fs::write(&p, body).unwrap();
    p
}

const LINE_CONFIG: &str = r#"{"rank":1,"weights":[
    {"w":["0/1"],"mult":1},{"w":["1/1"],"mult":1},{"w":["2/1"],"mult":1}]}"#;

#[test]
fn roots_a2_has_three_positive_roots() {
    let out = run(&["roots", "A", "2"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["positive_root_count"], 3);
    assert_eq!(r["positive_roots"].as_array().unwrap().len(), 3);
    assert_eq!(r["weyl_order"], 6);
    assert_eq!(r["cartan"][0][1], "-1/1");
    assert_eq!(r["faces"].as_array().unwrap().len(), 4);
}

#[test]
fn roots_a1_fundamental_weight_is_half_the_root() {
    let out = run(&["roots", "A", "1"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["simple_roots"][0], serde_json::json!(["1/1", "-1/1"]));
    assert_eq!(r["fundamental_weights"][0], serde_json::json!(["1/2", "-1/2"]));
}

#[test]
fn roots_unsupported_series_exits_2() {
    let out = run(&["roots", "B", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("capability"), "stderr: {err}");
}

#[test]
fn chambers_line_config_walls_and_chambers() {
    let p = temp("implosion-line012.json", LINE_CONFIG);
    let out = run(&["chambers", p.to_str().unwrap(), "--supports"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["wall_count"], 3);
    assert_eq!(r["chamber_count"], 2);
    let chambers = r["chambers"].as_array().unwrap();
    assert_eq!(chambers[0]["representative"], serde_json::json!(["1/2"]));
    assert_eq!(chambers[1]["representative"], serde_json::json!(["3/2"]));
    assert_ne!(chambers[0]["fingerprint_sha256"], chambers[1]["fingerprint_sha256"]);
    assert!(!chambers[0]["semistable_classes"].as_array().unwrap().is_empty());
    // wall pieces are the three weight points
    let walls = r["walls"].as_array().unwrap();
    let verts: Vec<&Value> = walls.iter().map(|w| &w["vertices"][0][0]).collect();
    assert_eq!(verts, ["0/1", "1/1", "2/1"]);
}

#[test]
fn chambers_verify_passes() {
    let p = temp("implosion-line012-verify.json", LINE_CONFIG);
    let out = run(&["chambers", p.to_str().unwrap(), "--verify"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["verification"]["drift_failures"], 0);
}

#[test]
fn chambers_clip_zero_sum_weights_to_their_span() {
    // Same line as LINE_CONFIG, embedded in the plane {x + y = 0}: the
    // default bounding box is 2-dimensional, the analysis region must not be.
    let cfg = r#"{"rank":1,"weights":[
        {"w":["0","0"]},{"w":["1","-1"]},{"w":["2","-2"]}]}"#;
    let p = temp("implosion-embedded-line.json", cfg);
    let out = run(&["chambers", p.to_str().unwrap(), "--verify"]);
    assert!(out.status.success());
    let r = report(&out);
    let chambers = r["chambers"].as_array().unwrap();
    assert_eq!(chambers.len(), 2);
    assert_eq!(chambers[0]["representative"], serde_json::json!(["1/2", "-1/2"]));
    assert_eq!(chambers[1]["representative"], serde_json::json!(["3/2", "-3/2"]));
    assert_eq!(r["verification"]["drift_failures"], 0);
}

#[test]
fn chambers_region_off_the_weight_span_exit_2() {
    let cfg = r#"{"rank":1,"weights":[
        {"w":["0","0"]},{"w":["1","-1"]},{"w":["2","-2"]}],
        "region":[["5","6"],["5","6"]]}"#;
    let p = temp("implosion-off-span.json", cfg);
    let out = run(&["chambers", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("affine span"), "stderr: {err}");
}

#[test]
fn chambers_empty_weights_exit_2() {
    let p = temp("implosion-empty.json", r#"{"rank":1,"weights":[]}"#);
    let out = run(&["chambers", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nonempty"), "stderr: {err}");
}

#[test]
fn chambers_malformed_json_reports_line() {
    let p = temp("implosion-broken.json", "{\"rank\": 1,\n  \"weights\": oops}");
    let out = run(&["chambers", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn chambers_reports_are_byte_identical() {
    let p = temp("implosion-line012-det.json", LINE_CONFIG);
    let a = run(&["chambers", p.to_str().unwrap(), "--verify", "--seed", "11"]);
    let b = run(&["chambers", p.to_str().unwrap(), "--verify", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_all_default_passes() {
    let out = run(&["verify-all"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["suites"].as_array().unwrap().len(), 6);
    assert_eq!(r["passed"], true);
    for s in r["suites"].as_array().unwrap() {
        assert_eq!(s["failures"], 0, "suite {} failed", s["suite"]);
        assert!(s["cases"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_all_single_suite_with_rank() {
    let out = run(&["verify-all", "--suite", "orbit-metric", "--rank", "3"]);
    assert!(out.status.success());
    let r = report(&out);
    let suites = r["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["suite"], "orbit-metric");
    assert_eq!(suites[0]["failures"], 0);
}

#[test]
fn verify_all_is_deterministic() {
    let a = run(&["verify-all", "--seed", "3"]);
    let b = run(&["verify-all", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn negated_sign_fails_with_witness() {
    let out = run(&["verify-all", "--negate-m-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let mo = r["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["suite"] == "m-oracle")
        .unwrap();
    assert!(mo["failures"].as_u64().unwrap() > 0);
    assert!(!mo["counterexamples"].as_array().unwrap().is_empty());
    assert_eq!(r["passed"], false);
}

#[test]
fn unknown_suite_exits_2() {
    let out = run(&["verify-all", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn master_check_passes() {
    let p = temp(
        "implosion-master-ok.json",
        r#"{"r":1,"epsilon":["1/100"],"grid_denominator":8,"random_samples":50}"#,
    );
    let out = run(&["master-check", p.to_str().unwrap()]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["boundary_nonvanishing"], true);
    assert_eq!(r["rescale_failures"], 0);
    assert_eq!(r["embedding_columns_sum_zero"], true);
    assert_eq!(r["moment_shift_failures"], 0);
    assert!(r["rescale_cases"].as_u64().unwrap() > 50);
}

#[test]
fn master_check_large_shift_fails_gracefully() {
    // 7/10 is inside the admissible range but too large to certify
    let p = temp(
        "implosion-master-wide.json",
        r#"{"r":1,"epsilon":["7/10"],"grid_denominator":4,"random_samples":10}"#,
    );
    let out = run(&["master-check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["boundary_nonvanishing"], false);
}

#[test]
fn master_check_oversized_shift_exits_2() {
    let p = temp(
        "implosion-master-huge.json",
        r#"{"r":1,"epsilon":["1/1"],"grid_denominator":4,"random_samples":10}"#,
    );
    let out = run(&["master-check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_file() {
    let dest = std::env::temp_dir().join("implosion-roots-a2-out.json");
    let _ = fs::remove_file(&dest);
    let out = run(&["roots", "A", "2", "--out", dest.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = run(&["roots", "A", "2"]);
    assert_eq!(fs::read(&dest).unwrap(), direct.stdout);
}

#[test]
fn float_mode_renders_decimals() {
    let out = run(&["roots", "A", "1", "--mode", "float"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["fundamental_weights"][0], serde_json::json!(["0.5", "-0.5"]));
}

#[test]
fn float_mode_requires_positive_tolerance() {
    let out = run(&["roots", "A", "1", "--mode", "float", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
