//! End-to-end checks of the `couette` binary: exit codes, schemas, and
//! byte-level determinism.

use std::process::{Command, Output};

fn couette(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_couette"))
        .args(args)
        .env_remove("COUETTE_PRECISION_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn exact_two_point_grid() {
    let out = couette(&[
        "exact", "--A", "1", "--B", "1", "--Cbar", "1", "--alpha", "1", "--u", "1", "--v", "1",
        "--t-max", "1", "--dt", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x,y,vx,vy,method");
    assert_eq!(lines[1], "0,0,0,1,1,exact");
    assert_eq!(
        lines[2],
        "1,0.896361676485673,0.36787944117144233,0.7357588823428847,0,exact"
    );
    assert_eq!(lines.len(), 3);
}

#[test]
fn hpm_order_zero_terms() {
    let out = couette(&["hpm", "--orders", "0", "--emit", "terms"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // x_0 = 1 - e^{-t}
    let expected = serde_json::json!([
        { "mode": "-1/1", "coeffs": ["-1/1"] },
        { "mode": "0/1", "coeffs": ["1/1"] },
    ]);
    assert_eq!(doc["orders"][0]["x"], expected);
    assert_eq!(doc["orders"][0]["y"], expected);
    assert_eq!(doc["params"]["Cbar"], "1/1");
}

#[test]
fn nonpositive_drag_is_a_domain_error() {
    let out = couette(&["exact", "--B", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("must be positive"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = couette(&["exact", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--definitely-not-a-flag"));
}

#[test]
fn coupling_note_reports_effective_reading() {
    let out = couette(&["exact", "--C", "1", "--t-max", "1", "--dt", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("coupling Cbar = 2 (derived as C + A from --C)"));

    let out = couette(&["exact", "--C", "1", "--Cbar", "1", "--t-max", "1", "--dt", "1"]);
    assert!(stderr(&out).contains("coupling Cbar = 1 (set explicitly via --Cbar)"));
}

#[test]
fn identical_argv_gives_identical_bytes() {
    let args = [
        "compare", "--method", "exact", "--method", "hpm:6", "--method", "rk4:0.01",
        "--quantity", "vy", "--t-max", "3", "--dt", "0.25",
    ];
    let a = couette(&args);
    let b = couette(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn compare_csv_schema_round_trips() {
    let out = couette(&[
        "compare", "--method", "hpm:4", "--quantity", "y", "--t-max", "1", "--dt", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,method,quantity,value,abs_error"));
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(fields[1], "hpm:4");
        assert_eq!(fields[2], "y");
        // every float field round-trips through f64 parsing
        for f in [fields[0], fields[3], fields[4]] {
            let v: f64 = f.parse().unwrap();
            assert_eq!(format!("{v}"), f);
        }
    }
}

#[test]
fn fixture_json_round_trips_into_rational_fn() {
    let out = couette(&["pade", "--fixture", "vy1010"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["fixture"], "vy1010");
    assert_eq!(doc["quantity"], "vy");
    let parsed: couette_core::RationalFn = serde_json::from_value(doc["fn"].clone()).unwrap();
    assert_eq!(parsed, couette_core::pade::fixture(couette_core::pade::FixtureId::Vy1010));
}

#[test]
fn built_pade_from_exact_series() {
    let out = couette(&[
        "pade", "--m", "2", "--n", "2", "--source", "exact", "--quantity", "vx", "--eval-at",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["degenerate"], false);
    let value = doc["eval"]["value"].as_f64().unwrap();
    // vx(0.5) = 1.5 e^{-0.5}; a [2/2] fit is good to ~1e-4 there
    assert!((value - 1.5 * (-0.5f64).exp()).abs() < 1e-3);
}

#[test]
fn pole_evaluation_exits_three() {
    // [1/1] of the y-series is t/(1+t): pole at t = -1
    let out = couette(&[
        "pade", "--m", "1", "--n", "1", "--source", "exact", "--quantity", "y", "--eval-at",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("pole"));
}

#[test]
fn precision_env_var_controls_rendering() {
    let out = Command::new(env!("CARGO_BIN_EXE_couette"))
        .args(["exact", "--t-max", "1", "--dt", "1"])
        .env("COUETTE_PRECISION_DIGITS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3.6788e-1"), "got: {text}");

    let out = Command::new(env!("CARGO_BIN_EXE_couette"))
        .args(["exact", "--t-max", "1", "--dt", "1"])
        .env("COUETTE_PRECISION_DIGITS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn divergence_json_includes_thresholds_and_params() {
    let out = couette(&[
        "divergence", "--method", "hpm:4", "--quantity", "y", "--tol", "0.01", "--dt", "0.1",
        "--t-max", "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["method"], "hpm:4");
    assert_eq!(doc["tol"], 0.01);
    assert_eq!(doc["dt"], 0.1);
    assert_eq!(doc["params"]["B"], "1/1");
    assert!(doc["t_star"].as_f64().is_some());
}

#[test]
fn oracle_rejects_bad_step_as_domain_error() {
    let out = couette(&["oracle", "--t-max", "1", "--h", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join("couette-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("traj.csv");
    let _ = std::fs::remove_file(&path);
    let out = couette(&[
        "exact", "--t-max", "1", "--dt", "0.5", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("t,x,y,vx,vy,method\n"));
    assert_eq!(content.lines().count(), 4);
    std::fs::remove_file(&path).unwrap();
}
