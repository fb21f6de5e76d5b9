use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cauchy-kit")).args(args).output().expect("binary runs")
}

fn samples<F: Fn(f64, f64) -> (f64, f64)>(f: F, n: usize) -> String {
    (0..n)
        .map(|j| {
            let th = -PI + 2.0 * PI * j as f64 / n as f64;
            let (re, im) = f(th.cos(), th.sin());
            format!("{th} {re} {im}\n")
        })
        .collect()
}

/// `1/(t - 2)` at `t = x + iy`.
fn pole_at_two(x: f64, y: f64) -> (f64, f64) {
    let (a, b) = (x - 2.0, y);
    let d = a * a + b * b;
    (a / d, -b / d)
}

#[test]
fn verify_boundary_relations_passes() {
    let out = cli(&["verify", "boundary-relations", "--n", "256"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,residual,tolerance,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_json_carries_schema_and_parseval_gaps() {
    let out = cli(&["verify", "hilbert", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "cauchy-kit/1");
    assert_eq!(v["config"]["suite"], "hilbert");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["check"] == "parseval/circle"));
    assert!(checks.iter().any(|c| c["check"] == "parseval/line"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cli(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "plemelj", "--n", "7"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "plemelj", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(cli(&["airfoil", "--speed", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["probe", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
}

#[test]
fn impossible_tolerance_exits_with_one() {
    let out = cli(&["verify", "integral-theorems", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("check failed"));
}

#[test]
fn airfoil_scalars_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = cli(&["airfoil", "--alpha", "pi/6", "--n", "128", "--format", "json", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    let gamma = v["scalars"]["circulation"].as_f64().unwrap();
    let lift = v["scalars"]["lift"].as_f64().unwrap();
    assert!((gamma - PI).abs() < 1e-10 && (lift - PI).abs() < 1e-10);
    assert_eq!(v["chord"].as_array().unwrap().len(), 128);
    assert_eq!(v["field"].as_array().unwrap().len(), 41 * 30);
}

#[test]
fn zero_incidence_gives_a_zero_table() {
    let out = cli(&["airfoil", "--alpha", "0", "--n", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let chord: Vec<&str> = text.split("\n\n").nth(1).unwrap().lines().skip(1).collect();
    assert_eq!(chord.len(), 32);
    for row in chord {
        assert!(row.split(',').skip(1).all(|c| c == "0"), "{row}");
    }
}

#[test]
fn probe_recovers_a_pole_and_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("pole.txt");
    fs::write(&good, samples(pole_at_two, 256)).unwrap();
    let out = cli(&["probe", good.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let pole = &v["poles"][0];
    assert!((pole["location_re"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert_eq!(v["details"]["uniqueness_claimed"], false);

    let flat = dir.path().join("flat.txt");
    fs::write(&flat, samples(|_, _| (1.0, 0.0), 64)).unwrap();
    let v: Value = serde_json::from_slice(&cli(&["probe", flat.to_str().unwrap(), "--format", "json"]).stdout).unwrap();
    assert!(v["poles"].as_array().unwrap().is_empty());

    let mut text = samples(pole_at_two, 64);
    let last_field = text.trim_end().rfind(' ').unwrap();
    text.truncate(last_field);
    let cut = dir.path().join("cut.txt");
    fs::write(&cut, text).unwrap();
    let out = cli(&["probe", cut.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 64"));

    let short = dir.path().join("short.txt");
    fs::write(&short, samples(pole_at_two, 8)).unwrap();
    assert_eq!(cli(&["probe", short.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let a = cli(&["verify", "convergence", "--seed", "7", "--n", "128"]);
    let b = cli(&["verify", "convergence", "--seed", "7", "--n", "128"]);
    assert_eq!(a.stdout, b.stdout);
    let c = cli(&["verify", "convergence", "--seed", "8", "--n", "128"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn transform_reads_angle_value_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sin.txt");
    let text: String = (0..64)
        .map(|j| {
            let th = -PI + 2.0 * PI * j as f64 / 64.0;
            format!("{th},{}\n", th.sin())
        })
        .collect();
    fs::write(&path, text).unwrap();
    let out = cli(&["transform", "circular", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in v["samples"].as_array().unwrap() {
        let th = row["theta"].as_f64().unwrap();
        assert!((row["output"].as_f64().unwrap() - th.cos()).abs() < 1e-12);
    }
}
