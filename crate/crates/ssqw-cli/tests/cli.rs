//! End-to-end tests of the `ssqw` binary: exit codes, output schemas,
//! byte determinism, and agreement between methods through the CLI surface.

use std::path::Path;
use std::process::{Command, Output};

fn ssqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssqw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ssqw_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssqw"))
        .args(args)
        .env("SSQW_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn qfim_closed_known_point() {
    let out = ssqw(&[
        "qfim",
        "--theta1",
        "1.5707963",
        "--theta2",
        "3.1415927",
        "--r2",
        "0",
        "--method",
        "closed",
    ]);
    let v = stdout_json(&out);
    assert!((v["f11"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((v["f22"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert_eq!(v["region"], "R0");
    assert_eq!(v["winding"], 1);
    assert_eq!(v["method"], "closed");
    assert!(v["t"].is_null());
}

#[test]
fn qfim_boundary_reports_degenerate_fisher() {
    let out = ssqw(&[
        "qfim", "--theta1", "1.0", "--theta2", "1.0", "--method", "closed",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["region"], "boundary");
    assert!(v["winding"].is_null());
    let det = v["f11"].as_f64().unwrap() * v["f22"].as_f64().unwrap()
        - v["f12"].as_f64().unwrap().powi(2);
    assert!(det.abs() < 1e-12);
}

#[test]
fn qfim_finite_equals_oracle_through_cli() {
    let finite = stdout_json(&ssqw(&[
        "qfim", "--theta1", "1.1", "--theta2", "2.3", "--r1", "0.48", "--r2", "0.6", "--r3",
        "0.64", "--t", "30", "--method", "finite",
    ]));
    let oracle = stdout_json(&ssqw(&[
        "qfim", "--theta1", "1.1", "--theta2", "2.3", "--r1", "0.48", "--r2", "0.6", "--r3",
        "0.64", "--t", "30", "--method", "oracle",
    ]));
    for key in ["f11", "f12", "f22", "d12", "incompat"] {
        let a = finite[key].as_f64().unwrap();
        let b = oracle[key].as_f64().unwrap();
        assert!((a - b).abs() < 1e-8, "{key}: {a} vs {b}");
    }
}

#[test]
fn qfim_json_round_trips() {
    let out = ssqw(&[
        "qfim", "--theta1", "0.9", "--theta2", "2.2", "--t", "20", "--method", "finite",
    ]);
    let v = stdout_json(&out);
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, reparsed);
}

#[test]
fn qfim_text_format() {
    let out = ssqw(&[
        "qfim", "--theta1", "1.0", "--theta2", "2.0", "--method", "closed", "--format", "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("f11"));
    assert!(text.contains("region   = R0 (winding 1)"));
    assert!(text.contains("t^2-normalized"));
}

#[test]
fn qfim_degrees_flag() {
    let rad = stdout_json(&ssqw(&[
        "qfim",
        "--theta1",
        "1.5707963267948966",
        "--theta2",
        "3.141592653589793",
        "--method",
        "closed",
    ]));
    let deg = stdout_json(&ssqw(&[
        "qfim", "--theta1", "90", "--theta2", "180", "--deg", "--method", "closed",
    ]));
    assert!((rad["f11"].as_f64().unwrap() - deg["f11"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn scan_csv_schema_order_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "scan".to_string(),
            "--quantity".into(),
            "f11".into(),
            "--grid".into(),
            "5x4".into(),
            "--range1".into(),
            "0.2:6.0".into(),
            "--range2".into(),
            "0.0:3.0".into(),
            "--out".into(),
            p.to_string_lossy().into_owned(),
        ]
    };
    let out = ssqw(&args(&p1).iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&p1).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta1,theta2,quantity,value,region,winding");
    assert_eq!(lines.len(), 1 + 20);
    // theta1-major: first four rows share theta1
    let first: Vec<&str> = lines[1].split(',').collect();
    let fourth: Vec<&str> = lines[4].split(',').collect();
    let fifth: Vec<&str> = lines[5].split(',').collect();
    assert_eq!(first[0], fourth[0]);
    assert_ne!(first[0], fifth[0]);
    assert_eq!(first[2], "f11");

    // identical bytes across runs and thread counts
    let a1 = args(&p2);
    let out = ssqw_with_threads(&a1.iter().map(|s| s.as_str()).collect::<Vec<_>>(), "1");
    assert!(out.status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    let out = ssqw_with_threads(&a1.iter().map(|s| s.as_str()).collect::<Vec<_>>(), "4");
    assert!(out.status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    // no temp file left behind
    assert!(!dir.path().join("b.tmp").exists());
}

#[test]
fn scan_theta2_zero_row_matches_oqw_curve() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("oqw.csv");
    let out = ssqw(&[
        "scan",
        "--quantity",
        "f11",
        "--grid",
        "7x2",
        "--range1",
        "0.5:5.5",
        "--range2",
        "0.0:1.0",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for line in std::fs::read_to_string(&p).unwrap().lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let theta2: f64 = cols[1].parse().unwrap();
        if theta2 == 0.0 {
            let theta1: f64 = cols[0].parse().unwrap();
            let value: f64 = cols[3].parse().unwrap();
            let s = (theta1 / 2.0).sin();
            assert!((value - s / (1.0 + s)).abs() < 1e-9);
        }
    }
}

#[test]
fn scan_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rows.json");
    let out = ssqw(&[
        "scan",
        "--quantity",
        "advantage",
        "--grid",
        "3x3",
        "--out",
        p.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
    assert_eq!(v[0]["quantity"], "advantage");
}

#[test]
fn avg_fisher_at_pi_is_one() {
    let out = ssqw(&["avg-fisher", "--theta2", "3.14159265", "--format", "json"]);
    let v = stdout_json(&out);
    assert!((v["closed"].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert!(v["difference"].as_f64().unwrap() < 1e-6);
}

#[test]
fn compare_eta_value() {
    let out = ssqw(&["compare", "--eta"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let eta: f64 = text.trim().parse().expect("a number");
    assert!((eta - 1.3325).abs() < 1e-3);
}

#[test]
fn compare_full_output() {
    let out = ssqw(&[
        "compare", "--theta1", "2.0", "--theta2", "3.0", "--format", "json",
    ]);
    let v = stdout_json(&out);
    let adv = v["omega_ssqw"].as_f64().unwrap() - v["omega_qw"].as_f64().unwrap();
    assert!((v["advantage"].as_f64().unwrap() - adv).abs() < 1e-15);
}

#[test]
fn poles_two_inside() {
    let out = ssqw(&[
        "poles",
        "--theta1",
        "1.5707963",
        "--theta2",
        "0.7853982",
        "--format",
        "json",
    ]);
    let v = stdout_json(&out);
    let inside = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["inside"].as_bool().unwrap())
        .count();
    assert_eq!(inside, 2);
}

#[test]
fn exit_codes() {
    // theta out of range: usage error
    let out = ssqw(&[
        "qfim", "--theta1", "7.0", "--theta2", "1.0", "--method", "closed",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // malformed grid: usage error
    let out = ssqw(&[
        "scan",
        "--quantity",
        "f11",
        "--grid",
        "5by5",
        "--out",
        "/tmp/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // poles at theta1 = pi: numerical failure
    let out = ssqw(&["poles", "--theta1", "3.141592653589793", "--theta2", "1.0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    // unsupported format combination
    let out = ssqw(&[
        "qfim", "--theta1", "1.0", "--theta2", "1.5", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // asymptotic on the boundary: numerical failure
    let out = ssqw(&[
        "qfim",
        "--theta1",
        "1.0",
        "--theta2",
        "1.0",
        "--method",
        "asymptotic",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn selfcheck_passes() {
    let out = ssqw(&["selfcheck"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 6);
    assert!(!text.contains("FAIL"));
}
