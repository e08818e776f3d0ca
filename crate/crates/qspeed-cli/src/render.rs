//! Byte-stable text, CSV, and JSON rendering of library results.
//!
//! CSV numeric cells use full-precision scientific notation (17 significant
//! digits) with `.` decimal separators and LF line endings, so identical
//! inputs render to identical bytes on every platform and every cell parses
//! back to the exact `f64` it was written from. Optional cells (a bound
//! outside its domain, a parameter a family does not have) are left empty.

use qspeed::{
    boson_extremal_alphas, boson_ratio_of_alpha, fermion_ratio_of_alpha, qubit_extremal_curves,
    Family, OrthoParams, SpeedPoint, SpeedReport, StateResult, TminVariant, VerificationReport,
};
use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt::Write;

/// Full-precision CSV cell: 17 significant digits round-trip any `f64`.
fn cell(value: f64) -> String {
    format!("{value:.16e}")
}

/// Human-readable block for one analyzed state.
pub fn report_text(report: &SpeedReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", report.family);
    let _ = writeln!(out, "concurrence: {:.12}", report.concurrence);
    let _ = writeln!(out, "mean energy: {:.12}", report.e_mean);
    let _ = writeln!(out, "energy spread: {:.12}", report.delta_e);
    let _ = writeln!(out, "t_min: {:.12}", report.t_min);
    match report.tau {
        Some(tau) => {
            let _ = writeln!(out, "tau: {tau:.12}");
        }
        None => {
            let _ = writeln!(
                out,
                "tau: unattainable (the state never reaches an orthogonal configuration)"
            );
        }
    }
    if let Some(ratio) = report.ratio {
        let _ = writeln!(out, "ratio: {ratio:.12}");
    }
    if report.root_angles.is_empty() {
        let _ = writeln!(out, "root angles: none");
    } else {
        let angles: Vec<String> = report
            .root_angles
            .iter()
            .map(|angle| format!("{angle:.12}"))
            .collect();
        let _ = writeln!(out, "root angles: {}", angles.join(", "));
    }
    out
}

/// Pretty JSON for one analyzed state, newline-terminated.
pub fn report_json(report: &SpeedReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// `C,ratio_min,ratio_max` curve rows for the qubit family.
///
/// `resolution >= 2` rows trace concurrence 0 to 1 inclusive; the upper
/// bound's cell is empty below the concurrence where its branch begins.
pub fn qubit_curves_csv(resolution: usize) -> StateResult<String> {
    let mut out = String::from("C,ratio_min,ratio_max\n");
    for index in 0..resolution {
        let c = index as f64 / (resolution - 1) as f64;
        let (ratio_min, ratio_max) = qubit_extremal_curves(c)?;
        let _ = writeln!(
            out,
            "{},{},{}",
            cell(c),
            cell(ratio_min),
            ratio_max.map(cell).unwrap_or_default()
        );
    }
    Ok(out)
}

/// `C,ratio_min,ratio_max` curve rows for the boson family under `variant`.
pub fn boson_curves_csv(resolution: usize, variant: TminVariant) -> StateResult<String> {
    let mut out = String::from("C,ratio_min,ratio_max\n");
    for index in 0..resolution {
        let c = index as f64 / (resolution - 1) as f64;
        let (alpha_min, alpha_max) = boson_extremal_alphas(c)?;
        let ratio_min = boson_ratio_of_alpha(alpha_min, variant)?;
        let ratio_max = match alpha_max {
            Some(alpha) => Some(boson_ratio_of_alpha(alpha, variant)?),
            None => None,
        };
        let _ = writeln!(
            out,
            "{},{},{}",
            cell(c),
            cell(ratio_min),
            ratio_max.map(cell).unwrap_or_default()
        );
    }
    Ok(out)
}

/// `alpha,C_available,ratio_bounds` rows along the fermion trace family.
///
/// `alpha` runs from `pi/3` to `pi`; `C_available` is the attainable
/// concurrence maximum (1 at every `alpha`, by choice of phases and the
/// degenerate-weight split); `ratio_bounds` rises from `sqrt(10)/3` on the
/// first row to `2` on the last.
pub fn fermion_curves_csv(resolution: usize) -> StateResult<String> {
    let mut out = String::from("alpha,C_available,ratio_bounds\n");
    for index in 0..resolution {
        // Endpoint-exact interpolation: the first row sits at pi/3 and the
        // last at pi, so the bounds land on the grid.
        let t = index as f64 / (resolution - 1) as f64;
        let alpha = FRAC_PI_3 * (1.0 - t) + PI * t;
        let ratio = fermion_ratio_of_alpha(alpha)?;
        let _ = writeln!(out, "{},{},{}", cell(alpha), cell(1.0), cell(ratio));
    }
    Ok(out)
}

/// Scatter rows: concurrence, speed ratio, and the generating parameters.
///
/// The header is family-specific only in its phase count; `beta` and
/// `delta_or_lambda` cells are empty where the family has no such
/// parameter. Cells carry full precision, so a row rebuilds its state
/// exactly.
pub fn sample_csv(family: Family, points: &[SpeedPoint]) -> String {
    let phase_count = match family {
        Family::Qubit => 4,
        Family::Boson => 3,
        Family::Fermion => 6,
    };
    let mut out = String::from("C,ratio,alpha,beta,delta_or_lambda");
    for index in 0..phase_count {
        let _ = write!(out, ",phase{index}");
    }
    out.push('\n');
    for point in points {
        let (alpha, beta, split, phases): (f64, Option<f64>, Option<f64>, &[f64]) =
            match &point.params {
                OrthoParams::Qubit(p) => (p.alpha, None, Some(p.delta), p.phases.as_slice()),
                OrthoParams::Boson(p) => (p.alpha, None, None, p.phases.as_slice()),
                OrthoParams::Fermion(p) => {
                    (p.alpha, Some(p.beta), Some(p.lambda), p.phases.as_slice())
                }
            };
        let _ = write!(
            out,
            "{},{},{},{},{}",
            cell(point.concurrence),
            cell(point.ratio),
            cell(alpha),
            beta.map(cell).unwrap_or_default(),
            split.map(cell).unwrap_or_default()
        );
        for &phase in phases {
            let _ = write!(out, ",{}", cell(phase));
        }
        out.push('\n');
    }
    out
}

/// Human-readable verification summary.
pub fn verify_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", report.family);
    let _ = writeln!(out, "states: {} (seed {})", report.count, report.seed);
    let _ = writeln!(out, "tolerance: {:e}", report.tolerance);
    let _ = writeln!(out, "max tau deviation: {:.3e}", report.max_tau_deviation);
    let _ = writeln!(
        out,
        "max moment deviation: {:.3e}",
        report.max_moment_deviation
    );
    let _ = writeln!(out, "failures: {}", report.failures.len());
    for failure in &report.failures {
        match failure.deviation {
            Some(deviation) => {
                let _ = writeln!(
                    out,
                    "  state {} {}: deviation {deviation:.3e}",
                    failure.index, failure.check
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "  state {} {}: presence mismatch",
                    failure.index, failure.check
                );
            }
        }
    }
    out
}

/// Pretty JSON verification report, newline-terminated.
pub fn verify_json(report: &VerificationReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use qspeed::{point_from_params, speed_report, QubitOrthoParams, StateRecord};
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn cells_round_trip_exactly() {
        for value in [0.0, 1.0, PI, 1.0 / 3.0, 2.0_f64.sqrt() * 1e-7, 1e17] {
            assert_eq!(cell(value).parse::<f64>().unwrap(), value);
        }
    }

    #[test]
    fn qubit_curves_have_empty_upper_cells_below_half() {
        let csv = qubit_curves_csv(5).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "C,ratio_min,ratio_max");
        assert_eq!(lines.len(), 6);
        // C = 0 and C = 0.25 rows end with an empty upper cell.
        assert!(lines[1].ends_with(','));
        assert!(lines[2].ends_with(','));
        let last: Vec<f64> = lines[5]
            .split(',')
            .map(|cell| cell.parse().unwrap())
            .collect();
        assert_eq!(last[0], 1.0);
        assert!((last[1] - 1.0).abs() < 1e-12);
        assert!((last[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boson_curves_depend_on_the_bound_variant() {
        let general = boson_curves_csv(3, TminVariant::General).unwrap();
        let fixed = boson_curves_csv(3, TminVariant::BosonFixed).unwrap();
        assert_ne!(general, fixed);
        let row = |csv: &str| -> Vec<f64> {
            csv.lines()
                .nth(2)
                .unwrap()
                .split(',')
                .map(|cell| cell.parse().unwrap())
                .collect()
        };
        // C = 0.5 spot values under each bound.
        assert!((row(&general)[1] - 1.0533873116973353).abs() < 1e-12);
        assert!((row(&general)[2] - SQRT_2).abs() < 1e-12);
        assert!((row(&fixed)[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fermion_curves_span_the_ratio_band() {
        let csv = fermion_curves_csv(4).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,C_available,ratio_bounds");
        assert_eq!(lines.len(), 5);
        let first: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
        let last: Vec<f64> = lines[4].split(',').map(|c| c.parse().unwrap()).collect();
        assert!((first[0] - FRAC_PI_3).abs() < 1e-15);
        assert_eq!(first[1], 1.0);
        assert!((first[2] - 10.0_f64.sqrt() / 3.0).abs() < 1e-12);
        assert!((last[0] - PI).abs() < 1e-15);
        assert!((last[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sample_rows_match_the_family_width() {
        let point = point_from_params(&OrthoParams::Qubit(QubitOrthoParams {
            alpha: 2.0,
            delta: 0.25,
            phases: [0.1, 0.2, 0.3, 0.4],
        }))
        .unwrap();
        let csv = sample_csv(Family::Qubit, &[point]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "C,ratio,alpha,beta,delta_or_lambda,phase0,phase1,phase2,phase3"
        );
        let cells: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cells.len(), 9);
        assert!(cells[3].is_empty());
        assert_eq!(cells[2].parse::<f64>().unwrap(), 2.0);
    }

    #[test]
    fn unattainable_states_render_without_a_ratio() {
        // Equal superposition of the two middle levels never leaves the
        // unit-modulus overlap circle.
        let record = StateRecord {
            family: Family::Qubit,
            amplitudes: vec![
                [0.0, 0.0],
                [FRAC_PI_2.sin() / SQRT_2, 0.0],
                [1.0 / SQRT_2, 0.0],
                [0.0, 0.0],
            ],
        };
        let report =
            speed_report(&record.to_state().unwrap(), TminVariant::General).unwrap();
        let text = report_text(&report);
        assert!(text.contains("tau: unattainable"));
        assert!(!text.contains("ratio:"));
        assert!(text.contains("root angles: none"));
        let json = report_json(&report);
        assert!(!json.contains("\"tau\""));
    }
}
