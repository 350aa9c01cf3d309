//! End-to-end checks of the command-line interface: exit codes, output
//! shapes, and report determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_diffpow")
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn delta_example() {
    let out = run(&["delta", "--p", "2", "x+y"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-x*y");
}

#[test]
fn member_example() {
    let out = run(&["member", "--ideal", "x", "x^2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn member_over_z_respects_coefficients() {
    let out = run(&["member", "--p", "3", "--ideal", "2*x", "x"]);
    assert_eq!(stdout(&out).trim(), "false");
    let out = run(&["member", "--p", "3", "--mod-p", "--ideal", "2*x", "x"]);
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn presentation_example() {
    let out = run(&[
        "presentation",
        "--family",
        "veronese",
        "--d",
        "2",
        "--vars",
        "s,t",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "y1*y3 - y2^2");
}

#[test]
fn verify_passes_on_bundled_config() {
    let config = configs_dir().join("example-sharp.json");
    let out = run(&["verify", config.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn verify_fails_with_exit_two_on_false_claim() {
    // (y1 - p) is not homogeneous, so the theorem hypotheses fail and its
    // powers contain constants that escape the graded ideal q^n.
    let bad = r#"{
        "ring": {"variables": ["s", "t"], "p": 2},
        "summand": {"family": "veronese", "d": 2},
        "primes": [
            {"name": "Q", "generators": ["y1 - p"], "contains_p": false,
             "witness": "y3"}
        ],
        "checks": [{"op": "thm_no_p", "prime": "Q", "n_max": 1}]
    }"#;
    let dir = std::env::temp_dir().join("diffpow-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-claim.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    // Either verdict FAIL (exit 2) is fine; what is not fine is exit 0.
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));
}

#[test]
fn verify_rejects_invalid_config_with_exit_one() {
    let bad = r#"{
        "ring": {"variables": ["s", "t"], "weights": [0, 1], "p": 2},
        "summand": {"family": "veronese", "d": 2},
        "checks": []
    }"#;
    let dir = std::env::temp_dir().join("diffpow-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-config.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn machine_reports_are_deterministic_modulo_timing() {
    let config = configs_dir().join("example-sharp.json");
    let strip = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.trim_start().starts_with("\"millis\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = run(&["verify", config.to_str().unwrap(), "--format", "machine"]);
    let b = run(&["verify", config.to_str().unwrap(), "--format", "machine"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
    // The machine payload parses back as JSON.
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["verdict"], "PASS");
}

#[test]
fn worker_count_does_not_change_the_report() {
    let config = configs_dir().join("example-sharp.json");
    let strip = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.trim_start().starts_with("\"millis\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let seq = run(&["verify", config.to_str().unwrap(), "--format", "machine"]);
    let par = run(&[
        "verify",
        config.to_str().unwrap(),
        "--format",
        "machine",
        "--workers",
        "3",
    ]);
    assert!(seq.status.success() && par.status.success());
    assert_eq!(strip(&stdout(&seq)), strip(&stdout(&par)));
}

#[test]
fn gb_prints_the_bezout_combination() {
    let out = run(&["gb", "--vars", "x,y", "--p", "5", "--ideal", "2*x, 3*y"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.trim() == "x*y"), "got: {text}");
}

#[test]
fn parse_error_positions_are_reported() {
    let out = run(&["member", "--vars", "x", "--ideal", "x", "x^-1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error"), "stderr: {err}");
}

#[test]
fn verify_writes_report_to_out_path() {
    let config = configs_dir().join("veronese-m2-d2.json");
    let dir = std::env::temp_dir().join("diffpow-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("report.json");
    let _ = std::fs::remove_file(&out_path);
    let out = run(&[
        "verify",
        config.to_str().unwrap(),
        "--format",
        "machine",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(parsed["verdict"], "PASS");
}

#[test]
fn delta_iterations_flag() {
    // delta^2(x + y) at p = 2: delta(-x*y) = (x^2*y^2 - x^2*y^2)/2 ... computed
    // exactly by the tool; spot-check against a library evaluation.
    let out = run(&["delta", "--p", "2", "--iterations", "2", "x + y"]);
    assert!(out.status.success());
    let printed = stdout(&out);
    let ring = diffpow::ring::Ring::standard(&["x", "y"], 2).unwrap();
    let pd = diffpow::pderiv::PDerivation::new(&ring).unwrap();
    let f = diffpow::parse::parse_polynomial(&ring, "x + y").unwrap();
    let expected = pd.delta_iter(&f, 2).unwrap();
    let got = diffpow::parse::parse_polynomial(&ring, printed.trim()).unwrap();
    assert_eq!(got, expected);
}
