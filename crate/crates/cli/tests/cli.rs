use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn qfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_config(dir: &TempDir, config: &str, extra: &[&str]) -> (Output, Option<Value>) {
    let cfg = write(dir, "config.json", config);
    let out = dir.path().join("report.json");
    let mut args = vec![
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let output = qfock(&args);
    let report = std::fs::read_to_string(&out)
        .ok()
        .map(|s| serde_json::from_str(&s).unwrap());
    (output, report)
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == name)
        .unwrap_or_else(|| panic!("suite {name} missing"))
}

#[test]
fn free_kernel_braid_and_positivity_pass() {
    let dir = TempDir::new().unwrap();
    let (out, report) = run_config(
        &dir,
        r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 2}, "d": 2, "n_max": 3,
            "suites": ["braid", "positivity"]}"#,
        &[],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = report.unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["status"], "pass");
    assert_eq!(suite(&report, "braid")["status"], "pass");
    assert_eq!(suite(&report, "pn_psd")["status"], "pass");
    assert_eq!(
        report["kernel"]["entries"][0][1],
        serde_json::json!([0.0, 0.0])
    );
}

#[test]
fn exclusion_at_cube_root_of_unity_passes() {
    let dir = TempDir::new().unwrap();
    let q = std::f64::consts::PI * 2.0 / 3.0;
    let config = format!(
        r#"{{"kernel": {{"kind": "anyon_fermion", "q": [{}, {}], "d": 3}}, "n_max": 3,
            "suites": [{{"name": "exclusion", "m": 3}}]}}"#,
        q.cos(),
        q.sin()
    );
    let (out, report) = run_config(&dir, &config, &[]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let s = suite(report.as_ref().unwrap(), "exclusion");
    assert_eq!(s["status"], "pass");
    assert!(s["max_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn anyon_traciality_reports_counterexample() {
    let dir = TempDir::new().unwrap();
    let (out, report) = run_config(
        &dir,
        r#"{"kernel": {"kind": "anyon_fermion", "q": [0, 1], "d": 2}, "n_max": 4,
            "suites": ["traciality"], "seed": 11}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = suite(report.as_ref().unwrap(), "traciality").clone();
    assert!(s["max_residual"].as_f64().unwrap() > 1e-6);
    assert!(s["witness"].as_str().unwrap().contains("p1 = B["));
    let notes = s["notes"].to_string();
    assert!(notes.contains("non-tracial"), "{notes}");
    assert!(notes.contains("run seed 11"), "{notes}");
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "config.json",
        r#"{"kernel": {"d": 2, "entries": [[[0.3, 0], [0, 1]], [[0, -1], [-1, 0]]]}, "n_max": 3,
            "suites": ["adjointness", "traciality", "associativity", "qcr"], "seed": 3}"#,
    );
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = qfock(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let c = dir.path().join("c.json");
    let args = [
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        c.to_str().unwrap(),
        "--seed",
        "4",
    ];
    assert_eq!(qfock(&args).status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(report["seed"], 4);
}

#[test]
fn report_goes_to_stdout_without_out() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "config.json",
        r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 2, "suites": ["braid"]}"#,
    );
    let o = qfock(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert!(report["suites"][0].get("wall_time_s").is_none());
}

#[test]
fn timings_are_opt_in() {
    let dir = TempDir::new().unwrap();
    let (out, report) = run_config(
        &dir,
        r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 2, "suites": ["braid"]}"#,
        &["--timings"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(report.unwrap()["suites"][0]["wall_time_s"].is_number());
}

#[test]
fn suite_flags_override_config() {
    let dir = TempDir::new().unwrap();
    let (out, report) = run_config(
        &dir,
        r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 3, "suites": ["braid"]}"#,
        &["--suite", "qcr", "--suite", "recursion_rn"],
    );
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = report.unwrap()["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["qcr", "recursion_rn"]);
}

#[test]
fn suite_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let (out, report) = run_config(
        &dir,
        r#"{"kernel": {"kind": "anyon_fermion", "q": [0.5403023058681398, 0.8414709848078965], "d": 3},
            "n_max": 3, "suites": ["projection_laws", "braid"], "tolerances": {"projector": 1e-300}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let report = report.unwrap();
    assert_eq!(report["status"], "fail");
    let s = suite(&report, "projection_laws");
    assert_eq!(s["status"], "fail");
    assert!(s["witness"].is_string());
    assert_eq!(suite(&report, "braid")["status"], "pass");
}

#[test]
fn kernel_subcommand_round_trips_through_run() {
    let dir = TempDir::new().unwrap();
    let kpath = dir.path().join("kernel.json");
    let o = qfock(&[
        "kernel",
        "--kind",
        "anyon_fermion",
        "--q",
        "-1,0",
        "--d",
        "2",
        "--out",
        kpath.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let k: Value = serde_json::from_str(&std::fs::read_to_string(&kpath).unwrap()).unwrap();
    assert_eq!(k["d"], 2);
    assert_eq!(k["entries"][0][1], serde_json::json!([-1.0, 0.0]));

    let (out, report) = run_config(
        &dir,
        r#"{"kernel": "kernel.json", "n_max": 3, "suites": ["norm_bound", "exclusion", "q_factorial_sum"]}"#,
        &[],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(report.unwrap()["status"], "pass");
}

#[test]
fn kernel_subcommand_validates_parameters() {
    assert_eq!(
        qfock(&[
            "kernel",
            "--kind",
            "anyon_fermion",
            "--q",
            "0.5,0",
            "--d",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        qfock(&["kernel", "--kind", "constant", "--q", "0,1", "--d", "2"])
            .status
            .code(),
        Some(2)
    );
    let o = qfock(&["kernel", "--kind", "constant", "--q", "0.25,0", "--d", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let k: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(k["entries"], serde_json::json!([[[0.25, 0.0]]]));
}

fn config_error(dir: &TempDir, config: &str) -> String {
    let (out, report) = run_config(dir, config, &[]);
    assert_eq!(out.status.code(), Some(2), "{config}");
    assert!(report.is_none());
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn parse_errors_carry_position() {
    let dir = TempDir::new().unwrap();
    let err = config_error(
        &dir,
        "{\"kernel\": {\"kind\": \"constant\",\n  \"q\": [0, 0] \"d\": 2}}",
    );
    assert!(err.contains("config.json:2:"), "{err}");
}

#[test]
fn kernel_file_errors_name_the_file() {
    let dir = TempDir::new().unwrap();
    write(
        &dir,
        "bad.json",
        "{\"d\": 2, \"entries\": [[[1, 0], [0.5, 0]],\n [[0.4, 0] [1, 0]]]}",
    );
    let err = config_error(
        &dir,
        r#"{"kernel": "bad.json", "n_max": 2, "suites": ["braid"]}"#,
    );
    assert!(err.contains("bad.json:2:"), "{err}");
    let err = config_error(
        &dir,
        r#"{"kernel": "missing.json", "n_max": 2, "suites": ["braid"]}"#,
    );
    assert!(err.contains("missing.json"), "{err}");
}

#[test]
fn invalid_configs_exit_two() {
    let dir = TempDir::new().unwrap();
    for config in [
        r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 2}, "n_max": 3, "suites": ["nonsense"]}"#,
        r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 4}, "n_max": 7, "suites": ["braid"]}"#,
        r#"{"kernel": {"d": 2, "entries": [[[1, 0], [0.5, 0]], [[0.4, 0], [1, 0]]]}, "n_max": 2, "suites": ["braid"]}"#,
        r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 2, "suites": ["exclusion"]}"#,
    ] {
        config_error(&dir, config);
    }
    assert_eq!(
        qfock(&[
            "run",
            "--config",
            Path::new("/nonexistent/c.json").to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
}
