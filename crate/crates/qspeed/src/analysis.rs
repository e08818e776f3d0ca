//! Extremal curves, Monte Carlo scatter datasets, and brute-force checks.
//!
//! The closed-form curve functions trace where particular parameter slices
//! of each family land in the concurrence / speed-ratio plane. The samplers
//! draw the scatter datasets behind those curves with per-index seeded
//! randomness, so any point can be regenerated independently of the others.
//! [`brute_force_tau`] and [`verify`] cross-check the root-solver pipeline
//! with a solver-independent dense time scan and finite-difference moment
//! tests.

use crate::dynamics::{
    energy_moments, overlap, speed_report, t_min_boson_fixed, EnergyMoments, TminVariant,
};
use crate::polyroot::{golden_min, UnitCirclePolynomial};
use crate::states::{
    BosonOrthoParams, Family, FermionOrthoParams, OrthoParams, QubitOrthoParams, State,
    StateError, StateResult,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

/// Default time-grid resolution of [`brute_force_tau`].
pub const DEFAULT_BRUTE_GRID: usize = 1_000_000;
/// Smallest accepted time-grid resolution.
pub const MIN_BRUTE_GRID: usize = 10_000;
/// Default modulus tolerance of [`brute_force_tau`].
pub const DEFAULT_BRUTE_TOL: f64 = 1e-6;
/// Sub-intervals used when rescanning a bracketed minimum.
const SUB_INTERVALS: usize = 1024;
/// Finite-difference step for the moment cross-checks.
const FD_STEP: f64 = 1e-4;
/// Allowed finite-difference error on the mean energy.
const MEAN_ENERGY_TOL: f64 = 1e-6;
/// Allowed finite-difference error on the energy curvature.
const CURVATURE_TOL: f64 = 1e-5;

/// Speed ratio `tau / T_min` along the qubit family, as a function of the
/// corner weight `Gamma = |c00|^2 = |c11|^2`.
///
/// `f(Gamma) = (2/pi) sqrt(2 Gamma) arccos((2 Gamma - 1) / (2 Gamma))`,
/// strictly decreasing from `sqrt(2)` at `Gamma = 1/4` to `1` at
/// `Gamma = 1/2`.
pub fn qubit_ratio_of_gamma(gamma: f64) -> StateResult<f64> {
    if !(0.25..=0.5).contains(&gamma) {
        return Err(StateError::Domain(format!(
            "gamma = {gamma} outside [1/4, 1/2]"
        )));
    }
    let angle = ((2.0 * gamma - 1.0) / (2.0 * gamma)).clamp(-1.0, 1.0).acos();
    Ok((2.0 / PI) * (2.0 * gamma).sqrt() * angle)
}

/// The two extremal qubit-parameter traces at fixed concurrence.
///
/// The lower trace (`delta = 1/2`, aligned phases) has `C = 4 Gamma - 1`,
/// so its ratio is `f((1 + C)/4)`; since `C >= 4 Gamma - 1` for every state
/// of the family and `f` decreases, it lower-bounds the whole scatter. The
/// upper trace (`delta = 0`) has `C = 2 Gamma`, defined only for
/// `C >= 1/2`; scatter points can exceed it. Both meet at `(1, 1)`.
pub fn qubit_extremal_curves(c: f64) -> StateResult<(f64, Option<f64>)> {
    if !(0.0..=1.0).contains(&c) {
        return Err(StateError::Domain(format!(
            "concurrence = {c} outside [0, 1]"
        )));
    }
    let ratio_min = qubit_ratio_of_gamma((1.0 + c) / 4.0)?;
    let ratio_max = if c >= 0.5 {
        Some(qubit_ratio_of_gamma((c / 2.0).max(0.25))?)
    } else {
        None
    };
    Ok((ratio_min, ratio_max))
}

/// Root angles of the two extremal boson-parameter traces at fixed
/// concurrence.
///
/// The slow trace solves `C = (1 + cos a)/(1 - cos a)` (anti-aligned
/// phases): `alpha_min = arccos((C - 1)/(C + 1))`, approaching `pi` as
/// `C -> 0`. The fast trace solves `C = 1/(1 - cos a)`:
/// `alpha_max = arccos(1 - 1/C)`, defined only for `C >= 1/2`. Both meet at
/// `(pi/2, pi/2)` for `C = 1`.
pub fn boson_extremal_alphas(c: f64) -> StateResult<(f64, Option<f64>)> {
    if !(0.0..=1.0).contains(&c) {
        return Err(StateError::Domain(format!(
            "concurrence = {c} outside [0, 1]"
        )));
    }
    let alpha_min = ((c - 1.0) / (c + 1.0)).clamp(-1.0, 1.0).acos();
    let alpha_max = if c >= 0.5 {
        Some((1.0 - 1.0 / c).clamp(-1.0, 1.0).acos())
    } else {
        None
    };
    Ok((alpha_min, alpha_max))
}

/// Speed ratio of the boson family at root angle `alpha` under the chosen
/// bound variant.
pub fn boson_ratio_of_alpha(alpha: f64, variant: TminVariant) -> StateResult<f64> {
    if !(FRAC_PI_2..=3.0 * FRAC_PI_2).contains(&alpha) {
        return Err(StateError::Domain(format!(
            "alpha = {alpha} outside [pi/2, 3*pi/2]"
        )));
    }
    let tau = alpha.min(TAU - alpha);
    let t_min = match variant {
        TminVariant::General => {
            // E = 1 and dE = 2 sqrt(Gamma) along the family.
            let gamma = 1.0 / (4.0 * (1.0 - alpha.cos()));
            let delta_e = 2.0 * gamma.sqrt();
            let moments = EnergyMoments {
                e_mean: 1.0,
                h2_mean: 1.0 + delta_e * delta_e,
                delta_e,
            };
            crate::dynamics::t_min_bound(&moments)?
        }
        TminVariant::BosonFixed => t_min_boson_fixed(),
    };
    Ok(tau / t_min)
}

/// Speed-limit bound along the fermion `beta = pi` trace:
/// `T_min(alpha) = (pi/2) sqrt(2 (1 - cos alpha) / (3 - cos alpha))`.
///
/// Defined for `cos alpha < 1/2`, the range the trace's weight constraints
/// allow.
pub fn fermion_tmin_of_alpha(alpha: f64) -> StateResult<f64> {
    if !(alpha > 0.0 && alpha <= PI) {
        return Err(StateError::Domain(format!("alpha = {alpha} outside (0, pi]")));
    }
    let ca = alpha.cos();
    if ca >= 0.5 {
        return Err(StateError::Domain(format!(
            "cos(alpha) = {ca} >= 1/2: the beta = pi trace needs alpha > pi/3"
        )));
    }
    Ok(FRAC_PI_2 * (2.0 * (1.0 - ca) / (3.0 - ca)).sqrt())
}

/// Speed ratio along the fermion `beta = pi` trace, rising from
/// `sqrt(10)/3` at `alpha = pi/3` to `2` at `alpha = pi`.
pub fn fermion_ratio_of_alpha(alpha: f64) -> StateResult<f64> {
    Ok(alpha / fermion_tmin_of_alpha(alpha)?)
}

/// One sampled point of the concurrence / speed-ratio plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedPoint {
    pub family: Family,
    pub concurrence: f64,
    /// `tau / T_min` under the general bound; at least 1 up to rounding.
    pub ratio: f64,
    /// The generating parameters, sufficient to rebuild the state.
    pub params: OrthoParams,
}

/// ChaCha stream keyed by (seed, index): every sample index draws from its
/// own stream, so regenerating any single point is order-independent.
fn rng_at(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

/// Draws orthogonality-reaching parameters for one scatter point.
///
/// Qubits and bosons draw `alpha` uniform on `[pi/2, 3*pi/2]` and phases
/// uniform on `[0, 2*pi)`; qubits add `delta` uniform on `[0, 1]`. Fermions
/// draw from the `beta = pi` trace family (`alpha` uniform on `[pi/3, pi]`,
/// `lambda` uniform on `[0, 1]`), whose speed ratios fill exactly the
/// `[sqrt(10)/3, 2]` band; see [`sample_fermion_region`] for the full
/// two-root-pair region.
fn draw_params(family: Family, rng: &mut ChaCha8Rng) -> OrthoParams {
    match family {
        Family::Qubit => OrthoParams::Qubit(QubitOrthoParams {
            alpha: rng.gen_range(FRAC_PI_2..=3.0 * FRAC_PI_2),
            delta: rng.gen_range(0.0..=1.0),
            phases: [(); 4].map(|_| rng.gen_range(0.0..TAU)),
        }),
        Family::Boson => OrthoParams::Boson(BosonOrthoParams {
            alpha: rng.gen_range(FRAC_PI_2..=3.0 * FRAC_PI_2),
            phases: [(); 3].map(|_| rng.gen_range(0.0..TAU)),
        }),
        Family::Fermion => OrthoParams::Fermion(FermionOrthoParams {
            alpha: rng.gen_range(FRAC_PI_3..=PI),
            beta: PI,
            lambda: rng.gen_range(0.0..=1.0),
            phases: [(); 6].map(|_| rng.gen_range(0.0..TAU)),
        }),
    }
}

/// Builds and analyzes the state a parameter set describes.
pub fn point_from_params(params: &OrthoParams) -> StateResult<SpeedPoint> {
    let state = params.build()?;
    let report = speed_report(&state, TminVariant::General)?;
    let ratio = report.ratio.ok_or_else(|| {
        StateError::Domain("constructed state missed orthogonality".to_string())
    })?;
    Ok(SpeedPoint {
        family: params.family(),
        concurrence: report.concurrence,
        ratio,
        params: *params,
    })
}

/// Samples `count` scatter points; deterministic in `(family, seed)` and
/// independent per index.
pub fn sample_states(family: Family, count: usize, seed: u64) -> StateResult<Vec<SpeedPoint>> {
    if count == 0 {
        return Err(StateError::Domain("count must be at least 1".to_string()));
    }
    (0..count)
        .map(|index| {
            let mut rng = rng_at(seed, index as u64);
            point_from_params(&draw_params(family, &mut rng))
        })
        .collect()
}

/// Samples the full two-root-pair fermion region by rejection: `(alpha,
/// beta)` uniform over `{cos a + cos b <= 0, 1 + 2 cos a cos b >= 0}`,
/// `lambda` and phases uniform.
///
/// Unlike the `beta = pi` trace that [`sample_states`] draws, ratios here
/// are not confined to `[sqrt(10)/3, 2]`: near the pinch corner
/// `cos a -> 1/sqrt(2)`, `cos b -> -1/sqrt(2)` they approach 1. The speed
/// limit `ratio >= 1` still holds everywhere.
pub fn sample_fermion_region(count: usize, seed: u64) -> StateResult<Vec<SpeedPoint>> {
    if count == 0 {
        return Err(StateError::Domain("count must be at least 1".to_string()));
    }
    (0..count)
        .map(|index| {
            let mut rng = rng_at(seed, index as u64);
            let params = loop {
                // PI - [0, pi) lands in (0, pi], keeping both angles valid.
                let alpha = PI - rng.gen_range(0.0..PI);
                let beta = PI - rng.gen_range(0.0..PI);
                let (ca, cb) = (alpha.cos(), beta.cos());
                if ca + cb <= 0.0 && 1.0 + 2.0 * ca * cb >= 0.0 {
                    break FermionOrthoParams {
                        alpha,
                        beta,
                        lambda: rng.gen_range(0.0..=1.0),
                        phases: [(); 6].map(|_| rng.gen_range(0.0..TAU)),
                    };
                }
            };
            point_from_params(&OrthoParams::Fermion(params))
        })
        .collect()
}

/// Solver-independent search for the first orthogonality time.
///
/// Scans `grid_points` times over `(0, 2*pi]` with an incrementally rotated
/// survival amplitude, brackets every local modulus minimum below a
/// slope-aware gate along with every sample already below `tol`, rescans
/// each bracket at [`SUB_INTERVALS`] finer spacing (so zero pairs far
/// closer than the grid spacing still separate), golden-polishes the
/// sub-minima through a compensated evaluation whose rounding floor sits
/// near `1e-32` (plain evaluation noise would cap the refinement of roots
/// whose neighbors depress the local slope), and returns the smallest
/// refined time whose modulus is at most `tol`; `None` when no minimum
/// passes.
pub fn brute_force_tau(state: &State, grid_points: usize, tol: f64) -> StateResult<Option<f64>> {
    if grid_points < MIN_BRUTE_GRID {
        return Err(StateError::Domain(format!(
            "grid_points = {grid_points} below the minimum {MIN_BRUTE_GRID}"
        )));
    }
    if !(tol > 0.0) {
        return Err(StateError::Domain(format!("tol = {tol} must be positive")));
    }
    let spectral = state.spectral_weights()?;
    let poly = spectral.polynomial()?;
    // |S(t)| = |P(exp(-it))| = |P(exp(it))| for real weights; the ladder
    // offset only contributes a unimodular phase. Stage 2 evaluates through
    // the compensated pass so bracket refinement stays slope-limited.
    let modulus_sqr = |t: f64| poly.modulus_sqr_refined(t);
    let n = grid_points;
    let h = TAU / n as f64;
    let gate = f64::max(1e-3, 3.0 * poly.degree() as f64 * h);
    let gate_sqr = gate * gate;

    // Stage 1: stream the grid, recording centers of gated local minima.
    // Samples already below the acceptance tolerance become centers even
    // when they are not local minima: on the shoulder of a deeper basin
    // the slope hides any nearby zero from the minimum test, so the whole
    // sub-tolerance plateau is tiled with overlapping brackets instead.
    let mut centers: Vec<usize> = Vec::new();
    let rot = Complex64::from_polar(1.0, h);
    let mut z = rot;
    let mut m_prev = 1.0; // |P(1)|^2: the weights sum to 1.
    let mut m_cur = poly.eval(z).norm_sqr();
    for j in 1..n {
        z *= rot;
        if j % 4096 == 0 {
            z = Complex64::from_polar(1.0, h * (j + 1) as f64);
        }
        let m_next = poly.eval(z).norm_sqr();
        if (m_cur <= m_prev && m_cur <= m_next && m_cur <= gate_sqr) || m_cur <= tol * tol {
            centers.push(j);
        }
        m_prev = m_cur;
        m_cur = m_next;
    }

    // Stage 2: rescan each bracket finely, then polish and test.
    for center in centers {
        let lo = h * (center - 1) as f64;
        let step = 2.0 * h / SUB_INTERVALS as f64;
        let s: Vec<f64> = (0..=SUB_INTERVALS)
            .map(|i| modulus_sqr(lo + step * i as f64))
            .collect();
        let mut best: Option<f64> = None;
        for i in 1..SUB_INTERVALS {
            if s[i] <= s[i - 1] && s[i] <= s[i + 1] {
                let t = golden_min(
                    &modulus_sqr,
                    lo + step * (i - 1) as f64,
                    lo + step * (i + 1) as f64,
                );
                if modulus_sqr(t) <= tol * tol {
                    best = Some(best.map_or(t, |b: f64| b.min(t)));
                }
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

/// Whether the survival amplitude stays at most `tol` on the whole arc
/// between two candidate orthogonality times.
///
/// Roots crowded more tightly than rounding of the stored weights can
/// resolve leave one connected sub-`tol` modulus valley; any point inside
/// it is an orthogonality time at that tolerance, so two answers in the
/// same valley agree as precisely as the representation permits.
fn shared_subtolerance_valley(poly: &UnitCirclePolynomial, a: f64, b: f64, tol: f64) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let tol_sqr = tol * tol;
    (0..=128).all(|k| {
        let t = lo + (hi - lo) * k as f64 / 128.0;
        poly.modulus_sqr_refined(t) <= tol_sqr
    })
}

/// Cross-check record for one sampled state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateCheck {
    pub index: usize,
    pub concurrence: f64,
    pub e_mean: f64,
    pub delta_e: f64,
    /// General bound.
    pub t_min: f64,
    /// Constant boson bound, reported for boson states only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_min_fixed: Option<f64>,
    /// Root-solver orthogonality time.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Dense-scan orthogonality time.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_scan: Option<f64>,
    pub params: OrthoParams,
}

/// One failed cross-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationFailure {
    /// Sample index the failure belongs to.
    pub index: usize,
    /// Which check failed: `tau-agreement`, `attainability`,
    /// `mean-energy-derivative`, or `energy-curvature`.
    pub check: String,
    /// Numeric deviation; `null` for presence mismatches.
    pub deviation: Option<f64>,
}

/// Outcome of cross-checking a sampled batch against the dense scan and
/// finite-difference moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub family: Family,
    pub count: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest |solver tau - scanned tau| over states where both exist.
    pub max_tau_deviation: f64,
    /// Largest finite-difference moment error.
    pub max_moment_deviation: f64,
    /// Empty exactly when every check passed its tolerance.
    pub failures: Vec<VerificationFailure>,
    pub states: Vec<StateCheck>,
}

/// Regenerates `count` seeded samples and cross-checks each: the solver's
/// orthogonality time against [`brute_force_tau`] (agreement within `tol`,
/// or both answers inside one arc on which the amplitude never rises above
/// `tol` — roots crowded beyond what the rounded stored weights resolve
/// leave such a valley, and every point of it passes the scan's own
/// acceptance test), and the reported energy moments against
/// Richardson-extrapolated finite differences of the survival amplitude
/// (mean within `1e-6`, curvature within `1e-5`).
pub fn verify(family: Family, count: usize, seed: u64, tol: f64) -> StateResult<VerificationReport> {
    if count == 0 {
        return Err(StateError::Domain("count must be at least 1".to_string()));
    }
    if !(tol > 0.0) {
        return Err(StateError::Domain(format!("tol = {tol} must be positive")));
    }
    let mut failures = Vec::new();
    let mut states = Vec::new();
    let mut max_tau_deviation = 0.0_f64;
    let mut max_moment_deviation = 0.0_f64;
    for index in 0..count {
        let mut rng = rng_at(seed, index as u64);
        let params = draw_params(family, &mut rng);
        let state = params.build()?;
        let report = speed_report(&state, TminVariant::General)?;
        let tau_scan = brute_force_tau(&state, DEFAULT_BRUTE_GRID, tol)?;
        match (report.tau, tau_scan) {
            (Some(solver), Some(scanned)) => {
                let deviation = (solver - scanned).abs();
                max_tau_deviation = max_tau_deviation.max(deviation);
                if deviation > tol {
                    let poly = state.spectral_weights()?.polynomial()?;
                    if !shared_subtolerance_valley(&poly, solver, scanned, tol) {
                        failures.push(VerificationFailure {
                            index,
                            check: "tau-agreement".to_string(),
                            deviation: Some(deviation),
                        });
                    }
                }
            }
            (None, None) => {}
            _ => failures.push(VerificationFailure {
                index,
                check: "attainability".to_string(),
                deviation: None,
            }),
        }
        let moments = energy_moments(&state)?;
        let (mean_dev, curvature_dev) = moment_deviations(&state, &moments)?;
        max_moment_deviation = max_moment_deviation.max(mean_dev).max(curvature_dev);
        if mean_dev > MEAN_ENERGY_TOL {
            failures.push(VerificationFailure {
                index,
                check: "mean-energy-derivative".to_string(),
                deviation: Some(mean_dev),
            });
        }
        if curvature_dev > CURVATURE_TOL {
            failures.push(VerificationFailure {
                index,
                check: "energy-curvature".to_string(),
                deviation: Some(curvature_dev),
            });
        }
        states.push(StateCheck {
            index,
            concurrence: report.concurrence,
            e_mean: report.e_mean,
            delta_e: report.delta_e,
            t_min: report.t_min,
            t_min_fixed: (family == Family::Boson).then(t_min_boson_fixed),
            tau: report.tau,
            tau_scan,
            params,
        });
    }
    Ok(VerificationReport {
        family,
        count,
        seed,
        tolerance: tol,
        max_tau_deviation,
        max_moment_deviation,
        failures,
        states,
    })
}

/// Finite-difference errors of the survival amplitude's derivatives at 0:
/// `i S'(0)` should equal the mean energy and `-S''(0)` the second moment.
/// Central differences at steps `h` and `h/2` are Richardson-combined.
fn moment_deviations(state: &State, moments: &EnergyMoments) -> StateResult<(f64, f64)> {
    let derivative = |h: f64| -> StateResult<Complex64> {
        Ok((overlap(state, h)? - overlap(state, -h)?) / (2.0 * h))
    };
    let curvature = |h: f64| -> StateResult<Complex64> {
        Ok((overlap(state, h)? - 2.0 * overlap(state, 0.0)? + overlap(state, -h)?) / (h * h))
    };
    let d = (4.0 * derivative(FD_STEP / 2.0)? - derivative(FD_STEP)?) / 3.0;
    let c = (4.0 * curvature(FD_STEP / 2.0)? - curvature(FD_STEP)?) / 3.0;
    let mean_dev = (Complex64::i() * d - moments.e_mean).norm();
    let curvature_dev = (c + moments.h2_mean).norm();
    Ok((mean_dev, curvature_dev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::qubit_from_params;
    use std::f64::consts::SQRT_2;

    #[test]
    fn ratio_endpoints_are_exact() {
        assert!((qubit_ratio_of_gamma(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((qubit_ratio_of_gamma(0.25).unwrap() - SQRT_2).abs() < 1e-15);
        assert!(qubit_ratio_of_gamma(0.2).is_err());
        assert!(qubit_ratio_of_gamma(0.51).is_err());
    }

    #[test]
    fn ratio_of_gamma_matches_solver_reports() {
        // f(Gamma) against the full pipeline at the matching alpha.
        for gamma in [0.27_f64, 0.3, 0.41, 0.5] {
            let alpha = (1.0 - 1.0 / (2.0 * gamma)).clamp(-1.0, 1.0).acos();
            let state = State::Qubit(
                qubit_from_params(&QubitOrthoParams {
                    alpha,
                    delta: 0.5,
                    phases: [0.0; 4],
                })
                .unwrap(),
            );
            let report = crate::dynamics::orthogonality_time(&state).unwrap();
            let f = qubit_ratio_of_gamma(gamma).unwrap();
            assert!(
                (report.ratio.unwrap() - f).abs() < 1e-9,
                "gamma = {gamma}"
            );
        }
    }

    #[test]
    fn ratio_of_gamma_is_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let gamma = 0.25 + 0.25 * (i as f64) / 1000.0;
            let f = qubit_ratio_of_gamma(gamma).unwrap();
            assert!(f < prev, "not decreasing at gamma = {gamma}");
            prev = f;
        }
    }

    #[test]
    fn qubit_curves_meet_at_full_entanglement() {
        let (lo, hi) = qubit_extremal_curves(1.0).unwrap();
        assert!((lo - 1.0).abs() < 1e-12);
        assert!((hi.unwrap() - 1.0).abs() < 1e-12);
        let (lo, hi) = qubit_extremal_curves(0.5).unwrap();
        assert!((lo - 1.053387).abs() < 1e-6);
        assert!((hi.unwrap() - SQRT_2).abs() < 1e-12);
        let (lo, hi) = qubit_extremal_curves(0.2).unwrap();
        assert!((lo - qubit_ratio_of_gamma(0.3).unwrap()).abs() < 1e-15);
        assert_eq!(hi, None);
        assert!(qubit_extremal_curves(1.2).is_err());
    }

    #[test]
    fn boson_extremal_alpha_values() {
        let (lo, hi) = boson_extremal_alphas(1.0).unwrap();
        assert!((lo - FRAC_PI_2).abs() < 1e-12);
        assert!((hi.unwrap() - FRAC_PI_2).abs() < 1e-12);
        let (lo, hi) = boson_extremal_alphas(0.5).unwrap();
        assert!((lo - 1.9106332362490186).abs() < 1e-12);
        assert!((hi.unwrap() - PI).abs() < 1e-12);
        let (lo, hi) = boson_extremal_alphas(1.0 / 3.0).unwrap();
        assert!((lo - 2.0 * FRAC_PI_3).abs() < 1e-12);
        assert_eq!(hi, None);
        let (lo, _) = boson_extremal_alphas(0.0).unwrap();
        assert!((lo - PI).abs() < 1e-12);
    }

    #[test]
    fn boson_ratio_variants() {
        let eq = boson_ratio_of_alpha(PI, TminVariant::General).unwrap();
        assert!((eq - SQRT_2).abs() < 1e-12);
        let fixed = boson_ratio_of_alpha(PI, TminVariant::BosonFixed).unwrap();
        assert!((fixed - 2.0).abs() < 1e-12);
        let saturating = boson_ratio_of_alpha(FRAC_PI_2, TminVariant::General).unwrap();
        assert!((saturating - 1.0).abs() < 1e-12);
        assert!(boson_ratio_of_alpha(0.3, TminVariant::General).is_err());
    }

    #[test]
    fn fermion_trace_endpoints() {
        let start = fermion_ratio_of_alpha(FRAC_PI_3).unwrap();
        assert!((start - 10.0_f64.sqrt() / 3.0).abs() < 1e-12);
        let end = fermion_ratio_of_alpha(PI).unwrap();
        assert!((end - 2.0).abs() < 1e-12);
        let t_start = fermion_tmin_of_alpha(FRAC_PI_3).unwrap();
        assert!((t_start - 0.993459).abs() < 1e-6);
        assert!(fermion_tmin_of_alpha(1.0).is_err());
        assert!(fermion_tmin_of_alpha(-0.5).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let a = sample_states(Family::Qubit, 200, 7).unwrap();
        let b = sample_states(Family::Qubit, 200, 7).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert!((0.0..=1.0 + 1e-12).contains(&p.concurrence));
            assert!(p.ratio >= 1.0 - 1e-9);
            assert!(p.ratio <= SQRT_2 + 1e-9);
        }
        // Per-index streams: a shorter run is a prefix of a longer one.
        let c = sample_states(Family::Qubit, 50, 7).unwrap();
        assert_eq!(&a[..50], &c[..]);
    }

    #[test]
    fn sampling_rejects_empty_batches() {
        assert!(matches!(
            sample_states(Family::Boson, 0, 1),
            Err(StateError::Domain(_))
        ));
        assert!(matches!(
            sample_fermion_region(0, 1),
            Err(StateError::Domain(_))
        ));
    }

    #[test]
    fn fermion_region_sampling_respects_the_speed_limit() {
        let points = sample_fermion_region(60, 5).unwrap();
        for p in &points {
            assert!(p.ratio >= 1.0 - 1e-9);
            assert!((0.0..=1.0 + 1e-12).contains(&p.concurrence));
            let OrthoParams::Fermion(f) = p.params else {
                panic!("wrong family");
            };
            assert!(f.alpha.cos() + f.beta.cos() <= 1e-15);
            assert!(1.0 + 2.0 * f.alpha.cos() * f.beta.cos() >= -1e-15);
        }
    }

    #[test]
    fn brute_force_finds_known_times() {
        let bell = OrthoParams::Qubit(QubitOrthoParams {
            alpha: FRAC_PI_2,
            delta: 0.5,
            phases: [0.0; 4],
        })
        .build()
        .unwrap();
        let tau = brute_force_tau(&bell, MIN_BRUTE_GRID, DEFAULT_BRUTE_TOL)
            .unwrap()
            .unwrap();
        assert!((tau - FRAC_PI_2).abs() < 1e-9);

        let trace = OrthoParams::Fermion(FermionOrthoParams {
            alpha: FRAC_PI_3,
            beta: PI,
            lambda: 0.5,
            phases: [0.0; 6],
        })
        .build()
        .unwrap();
        let tau = brute_force_tau(&trace, MIN_BRUTE_GRID, DEFAULT_BRUTE_TOL)
            .unwrap()
            .unwrap();
        assert!((tau - FRAC_PI_3).abs() < 1e-9);
    }

    #[test]
    fn brute_force_separates_roots_crowding_a_double_root() {
        // alpha close to pi parks a simple zero next to the double zero at
        // pi, with the modulus between them far below the acceptance
        // tolerance. The achievable accuracy is set by how precisely the
        // rounded coefficient list pins the root: rounding of the stored
        // weights displaces a zero with local slope sigma by roughly
        // 1e-16 / sigma, and sigma itself shrinks cubically as alpha
        // approaches pi.
        for (delta, granularity) in [(2e-2, 1e-9), (1e-3, 1e-5)] {
            let alpha = PI - delta;
            let state = OrthoParams::Fermion(FermionOrthoParams {
                alpha,
                beta: PI,
                lambda: 0.5,
                phases: [0.0; 6],
            })
            .build()
            .unwrap();
            let tau = brute_force_tau(&state, MIN_BRUTE_GRID, DEFAULT_BRUTE_TOL)
                .unwrap()
                .unwrap();
            assert!(
                (tau - alpha).abs() < granularity,
                "delta {delta}: tau {tau} vs alpha {alpha}"
            );
        }
    }

    #[test]
    fn brute_force_reports_unattainable_states() {
        use num_complex::Complex64;
        let half = Complex64::new(0.5_f64.sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let state = State::Qubit(
            crate::states::TwoQubitState::new([zero, half, half, zero]).unwrap(),
        );
        assert_eq!(
            brute_force_tau(&state, MIN_BRUTE_GRID, DEFAULT_BRUTE_TOL).unwrap(),
            None
        );
    }

    #[test]
    fn brute_force_validates_inputs() {
        let bell = OrthoParams::Qubit(QubitOrthoParams {
            alpha: FRAC_PI_2,
            delta: 0.5,
            phases: [0.0; 4],
        })
        .build()
        .unwrap();
        assert!(brute_force_tau(&bell, 100, 1e-6).is_err());
        assert!(brute_force_tau(&bell, MIN_BRUTE_GRID, 0.0).is_err());
    }

    #[test]
    fn verify_passes_on_small_seeded_batches() {
        for family in [Family::Qubit, Family::Boson, Family::Fermion] {
            let report = verify(family, 8, 1, 1e-6).unwrap();
            assert!(report.failures.is_empty(), "{family}: {:?}", report.failures);
            assert!(report.max_tau_deviation <= 1e-6);
            assert!(report.max_moment_deviation <= 1e-5);
            assert_eq!(report.states.len(), 8);
            for check in &report.states {
                assert_eq!(
                    check.t_min_fixed.is_some(),
                    family == Family::Boson,
                    "fixed bound is a boson-only column"
                );
            }
        }
    }

    #[test]
    fn verify_rejects_empty_or_unsigned_tolerance() {
        assert!(verify(Family::Qubit, 0, 1, 1e-6).is_err());
        assert!(verify(Family::Qubit, 1, 1, -1.0).is_err());
    }
}
