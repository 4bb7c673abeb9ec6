//! End-to-end tests of the `gamma-median` binary: output schemas, file
//! emission, exit codes, and report determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma-median"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn coeffs_xi_json_table() {
    let v = stdout_json(&["coeffs", "xi", "--order", "11"]);
    assert_eq!(v["table"], "xi");
    assert_eq!(v["order"], 11);
    assert_eq!(v["values"][0], "2/3");
    assert_eq!(v["values"][1], "8/135");
    assert_eq!(v["values"][2], "-16/2835");
    assert_eq!(v["values"][10], "-17546990164037632/7002491221234884375");
}

#[test]
fn coeffs_phi_csv_rows() {
    let out = run(&["coeffs", "phi", "--order", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x_power,coeff");
    assert_eq!(lines[1], "1,0/1");
    assert_eq!(lines[2], "0,0/1");
    assert_eq!(lines[3], "-1,1/3");
    assert_eq!(lines[4], "-2,29/810");
    assert_eq!(lines[5], "-3,-37/25515");
}

#[test]
fn median_point_json() {
    let v = stdout_json(&["median", "--x", "2", "--deriv"]);
    let m = v["m"].as_f64().unwrap();
    assert!((m - 1.6783469900166607).abs() < 1e-11);
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
    assert!(v["iterations"].as_u64().unwrap() > 0);
    let mp = v["m_prime"].as_f64().unwrap();
    assert!((mp - 0.9932948937493149).abs() < 1e-7);
}

#[test]
fn median_grid_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = run(&[
        "median",
        "--grid",
        "1:10:5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,m,m_prime,phi,x_phi");
    assert_eq!(lines.len(), 6);
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 5);
    }
}

#[test]
fn median_requires_one_mode() {
    let out = run(&["median"]);
    assert!(!out.status.success());
    let out = run(&["median", "--x", "1", "--grid", "1:2:3"]);
    assert!(!out.status.success());
}

#[test]
fn theta_sum_and_integral() {
    let v = stdout_json(&["theta", "--n", "5"]);
    assert_eq!(v["method"], "sum");
    assert!((v["theta"].as_f64().unwrap() - 0.3391326547694708).abs() < 1e-12);

    let v = stdout_json(&["theta", "--x", "2.5", "--method", "integral"]);
    assert_eq!(v["method"], "integral");
    assert!((v["theta"].as_f64().unwrap() - 0.3446360389247781).abs() < 1e-8);

    let v = stdout_json(&["theta", "--x", "100", "--method", "series", "--terms", "2"]);
    assert_eq!(v["method"], "series");
    assert!((v["theta"].as_f64().unwrap() - (1.0 / 3.0 + 4.0 / 13500.0)).abs() < 1e-14);
}

#[test]
fn theta_rejects_bad_arguments() {
    assert!(!run(&["theta", "--n", "0"]).status.success());
    assert!(!run(&["theta", "--n", "171"]).status.success());
    assert!(!run(&["theta", "--x", "2.5", "--method", "sum"]).status.success());
    assert!(!run(&["theta", "--x", "2.5"]).status.success());
}

#[test]
fn expand_mprime_coefficients() {
    let v = stdout_json(&["expand", "mprime", "--order", "3"]);
    assert_eq!(v["linear"], "0/1");
    assert_eq!(v["constant"], "1/1");
    let inv: Vec<String> = v["inv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(inv, vec!["0/1", "-8/405", "-368/25515"]);
}

#[test]
fn expand_eval_appends_value() {
    let v = stdout_json(&["expand", "m", "--order", "3", "--eval", "10"]);
    let value = v["value"].as_f64().unwrap();
    let direct = 10.0 - 1.0 / 3.0 + 8.0 / 4050.0 + 184.0 / 2551500.0;
    assert!((value - direct).abs() < 1e-12);
    assert_eq!(v["eval_x"], 10.0);
}

#[test]
fn verify_coeffs_report_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    for path in [&r1, &r2] {
        let out = run(&[
            "verify",
            "--suite",
            "coeffs",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        // one PASS/FAIL line per check on stderr
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    }
    let b1 = std::fs::read(&r1).unwrap();
    let b2 = std::fs::read(&r2).unwrap();
    assert_eq!(b1, b2, "reports must be byte-identical");

    let report: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(report["suite"], "coeffs");
    assert!(report["checks"].as_array().unwrap().len() >= 5);
    assert!(report["params"]["median_tol"].is_string());
    for check in report["checks"].as_array().unwrap() {
        assert_eq!(check["pass"], true, "{check}");
    }
}

#[test]
fn verify_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("verify.cfg");
    std::fs::write(&config, "identity_tol = 1e-6\ngrid_points = 16\n").unwrap();
    let out = run(&[
        "verify",
        "--suite",
        "identity",
        "--config",
        config.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["params"]["identity_tol"], "0.000001");
    assert_eq!(report["params"]["grid_points"], "16");
}

#[test]
fn verify_rejects_unknown_suite_and_config_key() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    std::fs::write(&config, "nonsense = 1\n").unwrap();
    let out = run(&["verify", "--suite", "coeffs", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_csv_tables() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tables");
    let out = run(&[
        "verify",
        "--suite",
        "coeffs",
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--grid-points",
        "12",
        "--grid-min",
        "0.5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["median_grid.csv", "xi.csv", "xphi.csv", "residuals.csv"] {
        let text = std::fs::read_to_string(csv.join(name)).unwrap();
        assert!(text.lines().count() > 2, "{name} too short");
    }
    let grid = std::fs::read_to_string(csv.join("median_grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 13); // header + 12 points
    let residuals = std::fs::read_to_string(csv.join("residuals.csv")).unwrap();
    assert_eq!(
        residuals.lines().next().unwrap(),
        "x,m,m_prime,phi,x_phi,m_expansion_2,residual_2,m_expansion_3,residual_3,m_expansion_4,residual_4"
    );
}
