//! End-to-end checks of the command-line surface: file formats, exit codes,
//! environment overrides, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_curveturn")
}

fn tmpdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curveturn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

#[test]
fn gen_writes_curve_csv() {
    let out = tmpdir().join("circle.csv");
    let res = run(&[
        "gen", "--family", "circle", "--r", "1", "--samples", "256", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("s,x,y\n"));
    assert!(text.trim_end().ends_with("# closed=true"));
    assert_eq!(text.lines().count(), 258); // header + 256 rows + trailer
}

#[test]
fn turn_reads_generated_csv() {
    let dir = tmpdir();
    let csv = dir.join("turn-in.csv");
    run(&[
        "gen", "--family", "circle", "--samples", "512", "--out",
        csv.to_str().unwrap(),
    ]);
    let res = run(&["turn", "--in", csv.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let value = report["value"].as_f64().unwrap();
    assert!((value - 2.0 * std::f64::consts::PI).abs() < 1e-2);
}

#[test]
fn verify_converse_on_bone_csv_holds() {
    let dir = tmpdir();
    let csv = dir.join("bone.csv");
    run(&[
        "gen", "--family", "bone", "--r", "1", "--delta", "0.5", "--samples", "2048", "--out",
        csv.to_str().unwrap(),
    ]);
    let res = run(&["verify", "converse", "--in", csv.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let rows: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(rows[0]["status"], "holds");
    assert_eq!(rows[0]["holds"], true);
}

#[test]
fn verify_all_on_square_reports_hypothesis_failures() {
    let res = run(&["verify", "all", "--family", "square", "--samples", "512"]);
    assert_eq!(res.status.code(), Some(2));
    let rows: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let by_claim = |name: &str| {
        rows.as_array()
            .unwrap()
            .iter()
            .find(|r| r["claim"] == name)
            .unwrap()
            .clone()
    };
    assert_eq!(by_claim("forward")["status"], "hypothesis_failed");
    assert_eq!(by_claim("converse")["status"], "not_applicable");
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("error[hypothesis]"), "stderr: {err}");
}

#[test]
fn failed_check_exits_one() {
    let res = run(&[
        "parreg", "--family", "circle", "--samples", "512", "--check-r", "1.1",
    ]);
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn invalid_input_exits_three() {
    let res = run(&["turn", "--in", "/definitely/not/here.csv"]);
    assert_eq!(res.status.code(), Some(3));
    let res = run(&["gen", "--family", "klein-bottle"]);
    assert_eq!(res.status.code(), Some(3));
    let dir = tmpdir();
    let bad = dir.join("bad.csv");
    std::fs::write(&bad, "x,y\n1,2\n").unwrap();
    let res = run(&["turn", "--in", bad.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(3));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("error[input]"), "stderr: {err}");
}

#[test]
fn spec_file_input_works() {
    let dir = tmpdir();
    let spec = dir.join("spec.json");
    std::fs::write(
        &spec,
        r#"{"family":"circle","params":{"r":0.5},"samples":512}"#,
    )
    .unwrap();
    let res = run(&["lipschitz", "--spec", spec.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let k = report["k"].as_f64().unwrap();
    assert!((k - 2.0).abs() < 0.02, "k = {k}");
}

#[test]
fn env_tolerance_is_used_and_flag_wins() {
    let res = Command::new(bin())
        .args(["verify", "converse", "--family", "circle", "--samples", "512"])
        .env("CURVETURN_TOL", "0.25")
        .output()
        .unwrap();
    let rows: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(rows[0]["config"]["tol"].as_f64().unwrap(), 0.25);

    let res = Command::new(bin())
        .args([
            "verify", "converse", "--family", "circle", "--samples", "512", "--tol", "0.002",
        ])
        .env("CURVETURN_TOL", "0.25")
        .output()
        .unwrap();
    let rows: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(rows[0]["config"]["tol"].as_f64().unwrap(), 0.002);
}

#[test]
fn profile_emits_csv() {
    let res = run(&["profile", "--family", "square", "--samples", "400"]);
    assert_eq!(res.status.code(), Some(0));
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.starts_with("s,kappa_cum\n"));
    assert_eq!(text.lines().count(), 401);
}

#[test]
fn svg_output_renders_curve_and_witness() {
    let dir = tmpdir();
    let svg = dir.join("bone.svg");
    let res = run(&[
        "reach", "--family", "bone", "--samples", "1024", "--method", "pairwise", "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("<path"));
    assert!(text.contains("<circle"));
}

#[test]
fn csv_format_flattens_reports() {
    let res = run(&[
        "verify", "all", "--family", "circle", "--samples", "512", "--format", "csv",
    ]);
    assert_eq!(res.status.code(), Some(0));
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.starts_with("claim,status,slack,detail\n"));
    assert_eq!(text.lines().count(), 7); // header + six claims
    for line in text.lines().skip(1) {
        assert!(line.contains(",holds,"), "unexpected row: {line}");
    }
}

#[test]
fn ltb_reach_reports_shape() {
    let res = run(&[
        "ltb", "--family", "circle", "--samples", "1024", "--format", "csv",
    ]);
    let text = String::from_utf8(res.stdout).unwrap();
    let delta: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((delta - std::f64::consts::SQRT_2).abs() < 0.05);

    let res = run(&[
        "reach", "--family", "circle", "--samples", "1024", "--format", "csv",
    ]);
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.starts_with("method,reach,resolution\n"));
    assert_eq!(text.lines().count(), 3);
}
