use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn xformlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xformlab"))
        .args(args)
        .env_remove("XFORMLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn laplace_with_oracle_check() {
    let out = xformlab(&[
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "causal(exp(-1*t))",
        "--at",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["var"], "s");
    assert_eq!(v["num"], serde_json::json!(["1"]));
    assert_eq!(v["den"], serde_json::json!(["1", "1"]));
    assert_eq!(v["roc"], "-1");
    assert_eq!(v["symbolic"]["re"], 0.5);
    assert!((v["oracle"]["re"].as_f64().unwrap() - 0.5).abs() < 1e-8);
    assert!(v["delta"].as_f64().unwrap() < 1e-8);
}

#[test]
fn fourier_of_step_names_the_failing_half_line() {
    let out = xformlab(&["transform", "--kind", "fourier", "--signal", "causal(1)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("not absolutely integrable on [0,∞)"),
        "{}",
        stderr(&out)
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn laplace_outside_the_certificate_is_an_existence_failure() {
    let out = xformlab(&[
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "causal(exp(1*t))",
        "--at",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = xformlab(&[
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "twosided(exp(-1*abs(t)))",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unbalanced_parenthesis_is_a_parse_error() {
    let out = xformlab(&[
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "causal(exp(-1*t)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected `)`"), "{}", stderr(&out));
}

#[test]
fn fourier_point_check_on_two_sided_signal() {
    let out = xformlab(&[
        "transform",
        "--kind",
        "fourier",
        "--signal",
        "twosided(exp(-1*abs(t)))",
        "--at",
        "-2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["var"], "iw");
    // 2/(1 + w^2) at w = -2
    assert!((v["symbolic"]["re"].as_f64().unwrap() - 0.4).abs() < 1e-15);
    assert!(v["delta"].as_f64().unwrap() < 1e-8);
}

#[test]
fn exported_suspension_analyzes_to_the_expected_response() {
    let dir = tempfile::tempdir().unwrap();
    let out = xformlab(&["case", "export", "suspension", "--params", "M=1,b=1,k=1"]);
    assert_eq!(out.status.code(), Some(0));
    let file = write(
        dir.path(),
        "suspension.ode",
        &String::from_utf8(out.stdout).unwrap(),
    );
    let out = xformlab(&["analyze", &file]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let w = &v["frequency_response"];
    assert_eq!(w["var"], "iw");
    assert_eq!(w["num"], serde_json::json!(["1", "1"]));
    assert_eq!(w["den"], serde_json::json!(["1", "1", "1"]));
    assert_eq!(v["approximate"], true);
    assert_eq!(v["poles"].as_array().unwrap().len(), 2);
    assert!((v["roc"].as_f64().unwrap() + 0.5).abs() < 1e-12);

    let out = xformlab(&["analyze", &file, "--output", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("kind,re,im,multiplicity"));
    assert_eq!(text.lines().filter(|l| l.starts_with("pole,")).count(), 2);
}

#[test]
fn identity_system_and_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = xformlab(&["analyze", &write(dir.path(), "id.ode", "y = u\n")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["transfer_function"]["num"], serde_json::json!(["1"]));
    assert_eq!(v["transfer_function"]["den"], serde_json::json!(["1"]));

    let out = xformlab(&["analyze", &write(dir.path(), "empty.ode", "")]);
    assert_eq!(out.status.code(), Some(2));
    let out = xformlab(&["analyze", dir.path().join("missing.ode").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = xformlab(&["analyze", &write(dir.path(), "zero.ode", "0*y'' = u")]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
}

#[test]
fn bode_grid_as_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "lowpass.ode",
        "# first-order low-pass\ny' + y = u\n",
    );
    let out = xformlab(&[
        "respond", &file, "--wmin", "1", "--wmax", "100", "--points", "5", "--output", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,magnitude,magnitude_db,phase_rad"));
    let first: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    // |1/(1+i)| = 1/sqrt 2, phase -pi/4
    assert_eq!(first[0], 1.0);
    assert!((first[1] - 0.5f64.sqrt()).abs() < 1e-15);
    assert!((first[3] + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    assert_eq!(text.lines().count(), 6);

    let out = xformlab(&[
        "respond", &file, "--wmin", "1", "--wmax", "100", "--points", "5",
    ]);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[4]["omega"], 100.0);

    let integrator = write(dir.path(), "int.ode", "y' = u");
    let out = xformlab(&[
        "respond",
        &integrator,
        "--wmin",
        "1",
        "--wmax",
        "2",
        "--points",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        (json(&out)[0]["phase_rad"].as_f64().unwrap() + std::f64::consts::FRAC_PI_2).abs() < 1e-15
    );
}

#[test]
fn case_export_validates_parameters() {
    let out = xformlab(&[
        "case",
        "export",
        "sallen-key",
        "--params",
        "R1=1,R2=2,C1=1/2,C2=3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("param R2 = 2") && text.contains("param C1 = 1/2"),
        "{text}"
    );
    let out = xformlab(&["case", "export", "ltc", "--params", "R=0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("R"));
    let out = xformlab(&["case", "export", "tokamak"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_reports_and_exit_codes() {
    let out = xformlab(&[
        "validate",
        "--suite",
        "case-studies",
        "--seed",
        "7",
        "--n",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cases_run"], 150);
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["seed"], 7);

    let out = xformlab(&["validate", "--suite", "bridge", "--seed", "1", "--n", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failures"], serde_json::json!([]));

    let out = xformlab(&["validate", "--suite", "table2", "--seed", "0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cases_run"], 0);

    // a truncation far too short makes the oracle disagree
    let out = xformlab(&[
        "validate", "--suite", "oracle", "--seed", "3", "--n", "2", "--trunc", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(!v["failures"].as_array().unwrap().is_empty());
    assert!(v["failures"][0]["delta"].as_f64().unwrap() > 1e-6);

    let out = xformlab(&["validate", "--suite", "table9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_seed_falls_back_to_env() {
    let args = ["validate", "--suite", "table3", "--seed", "11", "--n", "2"];
    let a = xformlab(&args);
    let b = xformlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let from_env = Command::new(env!("CARGO_BIN_EXE_xformlab"))
        .args(["validate", "--suite", "table3", "--n", "2"])
        .env("XFORMLAB_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, a.stdout);
}

#[test]
fn global_flags_are_checked() {
    let out = xformlab(&[
        "--rel-tol",
        "0",
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "causal(1)",
        "--at",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = xformlab(&[
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "causal(1)",
        "--at",
        "1",
        "--trunc",
        "-3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = xformlab(&[
        "transform",
        "--kind",
        "laplace",
        "--signal",
        "causal(1)",
        "--at",
        "2",
        "--trunc",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["oracle"]["re"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}
