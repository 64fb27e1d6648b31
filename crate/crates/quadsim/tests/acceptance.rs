//! Acceptance: the command-line contract, exercised through the compiled
//! binary. Prints one pass/fail line (visible with `--nocapture`).

use std::fs;
use std::path::Path;
use std::process::Command;

use quadsim::CSV_HEADER;
use quadsim_core::rotor::input_from_wrench;
use quadsim_core::{VehicleParams, Vec3, Wrench};

fn quadsim_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadsim"))
}

fn run_scenario(scenario: &Path, out: &Path) -> i32 {
    let status = quadsim_bin()
        .args(["run", "--scenario"])
        .arg(scenario)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs");
    status.status.code().expect("exit code")
}

/// floor(duration/dt) + 1 evaluated with slack for the rounding noise of
/// duration/dt, matching the simulator's own step counting.
fn expected_rows(dt: f64, duration: f64) -> usize {
    (duration / dt + 1e-9).floor() as usize + 1
}

#[test]
fn criterion_11_cli_contract() {
    let dir = tempfile::tempdir().unwrap();

    // Hover scenario: exit 0, exact header, full row count, byte-identical reruns.
    let hover = dir.path().join("hover.json");
    fs::write(&hover, r#"{"preset": "hover", "sim": {"dt": 0.001, "duration": 5.0}}"#).unwrap();
    let out_a = dir.path().join("hover_a.csv");
    let out_b = dir.path().join("hover_b.csv");
    let code_a = run_scenario(&hover, &out_a);
    let code_b = run_scenario(&hover, &out_b);
    assert_eq!(code_a, 0, "hover run exit code");
    assert_eq!(code_b, 0);

    let text = fs::read_to_string(&out_a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER), "header mismatch");
    let data_rows = lines.count();
    assert_eq!(data_rows, expected_rows(0.001, 5.0), "row count");
    let identical = fs::read(&out_a).unwrap() == fs::read(&out_b).unwrap();
    assert!(identical, "reruns must be byte-identical");

    // Invalid scenario: negative mass is a validation error, exit 2.
    let invalid = dir.path().join("invalid.json");
    fs::write(
        &invalid,
        r#"{"params": {"m": -1.0}, "preset": "hover", "sim": {"dt": 0.001, "duration": 5.0}}"#,
    )
    .unwrap();
    let out_invalid = dir.path().join("invalid.csv");
    assert_eq!(run_scenario(&invalid, &out_invalid), 2, "invalid scenario exit code");
    assert!(!out_invalid.exists(), "no CSV for invalid scenarios");

    // Constant pitch torque drives theta through pi/2: exit 3 plus a
    // partial CSV.
    let params = VehicleParams::default();
    let u = input_from_wrench(
        &Wrench::new(params.mass * params.gravity, Vec3::new(0.0, 0.05, 0.0)),
        &params,
    )
    .unwrap()
    .as_array();
    let singular = dir.path().join("singular.json");
    fs::write(
        &singular,
        serde_json::json!({
            "schedule": [{"t": 0.0, "u": u}],
            "sim": {"dt": 0.001, "duration": 2.0}
        })
        .to_string(),
    )
    .unwrap();
    let out_singular = dir.path().join("singular.csv");
    assert_eq!(run_scenario(&singular, &out_singular), 3, "singularity exit code");
    let text = fs::read_to_string(&out_singular).unwrap();
    let rows = text.lines().count() - 1;
    assert!(
        rows > 100 && rows < expected_rows(0.001, 2.0),
        "partial trajectory expected, got {rows} rows"
    );

    println!("criterion 11 (cli contract): PASS");
}
