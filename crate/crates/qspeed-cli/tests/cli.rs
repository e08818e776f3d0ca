//! End-to-end tests of the `qspeed` binary: exit codes, output formats,
//! configuration merging, and unit scaling.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, SQRT_2};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

/// `1/sqrt(2)` rounded to the nearest `f64`.
const INV_SQRT_2: f64 = 0.7071067811865476;

/// Runs the compiled binary with `args`.
fn qspeed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspeed"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Captured stdout as UTF-8.
fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

/// Captured stderr as UTF-8.
fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

/// Exit code, panicking if the process was killed by a signal.
fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// Writes `contents` under `dir` and returns the path as a string.
fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).expect("write file");
    path.to_string_lossy().into_owned()
}

/// Interchange JSON for the Bell state `(|00> + |11>)/sqrt(2)`.
fn bell_json() -> String {
    format!(
        r#"{{"family":"qubit","amplitudes":[[{a},0.0],[0.0,0.0],[0.0,0.0],[{a},0.0]]}}"#,
        a = INV_SQRT_2
    )
}

#[test]
fn analyze_reports_bell_saturation() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = write_file(dir.path(), "bell.json", &bell_json());
    let out = qspeed(&["analyze", &path, "--format", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert!((report["concurrence"].as_f64().expect("concurrence") - 1.0).abs() < 1e-12);
    assert!((report["tau"].as_f64().expect("tau") - FRAC_PI_2).abs() < 1e-9);
    assert!((report["ratio"].as_f64().expect("ratio") - 1.0).abs() < 1e-9);
}

#[test]
fn analyze_renders_unattainable_states() {
    // (|01> + |10>)/sqrt(2) occupies a single energy level, so its survival
    // amplitude is a pure phase and never vanishes.
    let dir = tempfile::tempdir().expect("tempdir");
    let json = format!(
        r#"{{"family":"qubit","amplitudes":[[0.0,0.0],[{a},0.0],[{a},0.0],[0.0,0.0]]}}"#,
        a = INV_SQRT_2
    );
    let path = write_file(dir.path(), "middle.json", &json);
    let out = qspeed(&["analyze", &path]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("tau: unattainable"), "text: {text}");
    assert!(!text.contains("ratio:"), "no ratio without tau: {text}");
}

#[test]
fn analyze_rejects_wrong_amplitude_count() {
    let dir = tempfile::tempdir().expect("tempdir");
    let json = r#"{"family":"qubit","amplitudes":[[1.0,0.0],[0.0,0.0],[0.0,0.0]]}"#;
    let path = write_file(dir.path(), "short.json", json);
    let out = qspeed(&["analyze", &path]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("4 amplitudes, got 3"), "stderr: {}", stderr(&out));
}

#[test]
fn analyze_rejects_unnormalized_states() {
    let dir = tempfile::tempdir().expect("tempdir");
    let json = r#"{"family":"qubit","amplitudes":[[0.5,0.0],[0.0,0.0],[0.0,0.0],[0.5,0.0]]}"#;
    let path = write_file(dir.path(), "small.json", json);
    let out = qspeed(&["analyze", &path]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("norm"), "stderr: {}", stderr(&out));
}

#[test]
fn analyze_rejects_fixed_bound_for_qubits() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = write_file(dir.path(), "bell.json", &bell_json());
    let out = qspeed(&["analyze", &path, "--tmin-variant", "boson-paper"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bosons"), "stderr: {}", stderr(&out));
}

#[test]
fn analyze_scales_with_energy_units() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = write_file(dir.path(), "bell.json", &bell_json());
    let out = qspeed(&[
        "analyze", &path, "--epsilon", "2", "--hbar", "3", "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    // Times scale by hbar/epsilon = 1.5, energies by epsilon = 2; the ratio
    // is dimensionless and stays put.
    assert!((report["tau"].as_f64().expect("tau") - 1.5 * FRAC_PI_2).abs() < 1e-12);
    assert!((report["t_min"].as_f64().expect("t_min") - 1.5 * FRAC_PI_2).abs() < 1e-12);
    assert!((report["e_mean"].as_f64().expect("e_mean") - 2.0).abs() < 1e-12);
    assert!((report["delta_e"].as_f64().expect("delta_e") - 2.0).abs() < 1e-12);
    assert!((report["ratio"].as_f64().expect("ratio") - 1.0).abs() < 1e-9);
}

#[test]
fn sample_rejects_zero_count() {
    let out = qspeed(&["sample", "--family", "qubit", "--count", "0"]);
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("count"), "stderr: {}", stderr(&out));
}

#[test]
fn curves_rejects_tiny_resolution() {
    let out = qspeed(&["curves", "--family", "qubit", "--resolution", "1"]);
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("resolution"), "stderr: {}", stderr(&out));
}

#[test]
fn curves_requires_a_family() {
    let out = qspeed(&["curves"]);
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("--family"), "stderr: {}", stderr(&out));
}

#[test]
fn curves_qubit_csv_has_expected_shape() {
    let out = qspeed(&["curves", "--family", "qubit", "--resolution", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "C,ratio_min,ratio_max");
    let cells = |line: &str| line.split(',').map(str::to_owned).collect::<Vec<_>>();
    let first = cells(lines[1]);
    assert_eq!(first.len(), 3);
    assert!(first[0].parse::<f64>().expect("C").abs() < 1e-15);
    assert!((first[1].parse::<f64>().expect("min") - SQRT_2).abs() < 1e-12);
    assert!(first[2].is_empty(), "upper branch undefined at C = 0");
    let middle = cells(lines[3]);
    assert!((middle[0].parse::<f64>().expect("C") - 0.5).abs() < 1e-15);
    assert!((middle[2].parse::<f64>().expect("max") - SQRT_2).abs() < 1e-12);
    let last = cells(lines[5]);
    assert!((last[0].parse::<f64>().expect("C") - 1.0).abs() < 1e-15);
    assert!((last[1].parse::<f64>().expect("min") - 1.0).abs() < 1e-12);
    assert!((last[2].parse::<f64>().expect("max") - 1.0).abs() < 1e-12);
}

#[test]
fn curves_boson_bound_variants_differ() {
    let general = qspeed(&["curves", "--family", "boson", "--resolution", "3"]);
    let fixed = qspeed(&[
        "curves", "--family", "boson", "--resolution", "3", "--tmin-variant", "boson-paper",
    ]);
    assert_eq!(code(&general), 0);
    assert_eq!(code(&fixed), 0);
    let general = stdout(&general);
    let fixed = stdout(&fixed);
    assert_ne!(general, fixed, "bound variants must produce different curves");
    // Middle row is C = 1/2; under the constant pi/2 bound the slow trace
    // sits at arccos(-1/3) / (pi/2).
    let row: Vec<&str> = fixed.lines().nth(2).expect("C = 1/2 row").split(',').collect();
    let expected = (-1.0f64 / 3.0).acos() / FRAC_PI_2;
    assert!((row[1].parse::<f64>().expect("min") - expected).abs() < 1e-12);
    assert!((row[2].parse::<f64>().expect("max") - 2.0).abs() < 1e-12);
}

#[test]
fn curves_fermion_band_spans_expected_ratios() {
    let out = qspeed(&["curves", "--family", "fermion", "--resolution", "4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "alpha,C_available,ratio_bounds");
    let first: Vec<&str> = lines[1].split(',').collect();
    assert!((first[0].parse::<f64>().expect("alpha") - FRAC_PI_3).abs() < 1e-15);
    assert!((first[2].parse::<f64>().expect("ratio") - 10.0f64.sqrt() / 3.0).abs() < 1e-12);
    let last: Vec<&str> = lines[4].split(',').collect();
    assert!((last[0].parse::<f64>().expect("alpha") - PI).abs() < 1e-15);
    assert!((last[2].parse::<f64>().expect("ratio") - 2.0).abs() < 1e-12);
}

#[test]
fn verify_writes_passing_boson_report() {
    let dir = tempfile::tempdir().expect("tempdir");
    let report_path = dir.path().join("report.json");
    let out = qspeed(&[
        "verify", "--family", "boson", "--count", "20", "--seed", "3",
        "--out", report_path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("failures: 0"), "stdout: {}", stdout(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).expect("report written"))
            .expect("json report");
    let states = report["states"].as_array().expect("states array");
    assert_eq!(states.len(), 20);
    for state in states {
        let fixed = state["t_min_fixed"].as_f64().expect("fixed bound for bosons");
        assert!((fixed - FRAC_PI_2).abs() < 1e-15);
    }
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_file(dir.path(), "defaults.conf", "family=boson\nseed=9\ncount=12\n");
    let from_config = dir.path().join("a.csv");
    let from_flags = dir.path().join("b.csv");
    // The config supplies family and seed; --count overrides its count.
    let out = qspeed(&[
        "--config", &config, "sample", "--count", "5",
        "--out", from_config.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let out = qspeed(&[
        "sample", "--family", "boson", "--seed", "9", "--count", "5",
        "--out", from_flags.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let a = fs::read(&from_config).expect("config-driven csv");
    let b = fs::read(&from_flags).expect("flag-driven csv");
    assert_eq!(a, b, "config-driven run must match the flag-driven run");
}

#[test]
fn config_rejects_unknown_keys() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_file(dir.path(), "defaults.conf", "familyy=boson\n");
    let out = qspeed(&["--config", &config, "sample", "--family", "qubit", "--count", "2"]);
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("familyy"), "stderr: {}", stderr(&out));
}

#[test]
fn help_exits_zero_and_unknown_flags_exit_usage() {
    let help = qspeed(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("Usage"));
    let unknown = qspeed(&["analyze", "state.json", "--no-such-flag"]);
    assert_eq!(code(&unknown), 64);
}
