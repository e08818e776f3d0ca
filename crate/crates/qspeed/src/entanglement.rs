//! Concurrence and entanglement entropy for the three families.
//!
//! Each family has a closed-form concurrence built from the determinant-like
//! combination of its coefficients; it is 0 for product (or single
//! Slater/permanent) states and 1 at maximal entanglement. For qubits the
//! reduced-state entropy follows from the concurrence alone.

use crate::states::{
    ensure_operable, BosonCoeffMatrix, FermionCoeffMatrix, State, StateError, StateResult,
    TwoQubitState,
};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Concurrence of a two-qubit state: `2 |c00 c11 - c01 c10|`.
pub fn concurrence_qubit(state: &TwoQubitState) -> StateResult<f64> {
    ensure_operable(state.validate())?;
    Ok(2.0 * (state.c[0] * state.c[3] - state.c[1] * state.c[2]).norm())
}

/// Concurrence of a two-boson state: `4 |v00 v11 - v01^2|`.
pub fn concurrence_boson(state: &BosonCoeffMatrix) -> StateResult<f64> {
    ensure_operable(state.validate())?;
    let v = &state.v;
    Ok(4.0 * (v[0][0] * v[1][1] - v[0][1] * v[0][1]).norm())
}

/// Concurrence of a two-fermion state:
/// `8 |w01 w23 - w02 w13 + w03 w12|`.
pub fn concurrence_fermion(state: &FermionCoeffMatrix) -> StateResult<f64> {
    ensure_operable(state.validate())?;
    let u = state.upper();
    Ok(8.0 * (u[0] * u[5] - u[1] * u[4] + u[2] * u[3]).norm())
}

/// Concurrence of a state from any family.
pub fn concurrence(state: &State) -> StateResult<f64> {
    match state {
        State::Qubit(s) => concurrence_qubit(s),
        State::Boson(s) => concurrence_boson(s),
        State::Fermion(s) => concurrence_fermion(s),
    }
}

/// Entanglement entropy (nats) of either qubit's reduced state.
pub fn entanglement_entropy_qubit(state: &TwoQubitState) -> StateResult<f64> {
    entropy_of_concurrence(concurrence_qubit(state)?)
}

/// Entanglement entropy (nats) as a function of concurrence.
///
/// The reduced eigenvalues are `(1 ± sqrt(1 - C^2)) / 2`, so the entropy is
/// zero exactly when the concurrence is zero, `ln 2` at `C = 1`, and
/// strictly increasing between. Values a rounding error past the ends are
/// clamped, since computed concurrences carry float noise.
pub fn entropy_of_concurrence(c: f64) -> StateResult<f64> {
    if !(-1e-9..=1.0 + 1e-9).contains(&c) {
        return Err(StateError::Domain(format!(
            "concurrence = {c} outside [0, 1]"
        )));
    }
    let c = c.clamp(0.0, 1.0);
    let lambda = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    Ok(entropy_term(lambda) + entropy_term(1.0 - lambda))
}

/// `-p ln p`, continuously extended to 0 at `p = 0`.
fn entropy_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.ln()
    }
}

/// Closed-form qubit concurrence in orthogonality parameters.
///
/// For the state built from `(alpha, delta)` with corner weight
/// `Gamma = 1 / (2 (1 - cos alpha))`, the concurrence depends on the phases
/// only through `phi = (theta01 + theta10) - (theta00 + theta11)`:
/// `C = 2 |Gamma - exp(i phi) sqrt(delta (1 - delta)) (-2 Gamma cos alpha)|`.
pub fn phase_form_concurrence(alpha: f64, delta: f64, phi: f64) -> StateResult<f64> {
    if !(FRAC_PI_2..=3.0 * FRAC_PI_2).contains(&alpha) {
        return Err(StateError::Domain(format!(
            "alpha = {alpha} outside [pi/2, 3*pi/2]"
        )));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(StateError::Domain(format!("delta = {delta} outside [0, 1]")));
    }
    let gamma = 1.0 / (2.0 * (1.0 - alpha.cos()));
    let middle = (-2.0 * gamma * alpha.cos()).max(0.0);
    let cross = (delta * (1.0 - delta)).max(0.0).sqrt() * middle;
    let z = Complex64::new(gamma, 0.0) - Complex64::from_polar(cross, phi);
    Ok(2.0 * z.norm())
}

/// Concurrence of the equal-modulus fermion family.
///
/// These are the states with `|w01| = |w02| = |w13| = |w23| = 1/4` and
/// vanishing `w03, w12` (the steepest point of the `beta = pi` trace, where
/// the weight ladder is `(1/4, 1/4, 0, 1/4, 1/4)`). Their concurrence spans
/// the full `[0, 1]` range and depends only on the two pairwise phase sums:
/// `C = |exp(i(phi01 + phi23)) - exp(i(phi02 + phi13))| / 2`.
pub fn saturating_family_concurrence(phases: [f64; 4]) -> f64 {
    let [p01, p02, p13, p23] = phases;
    let direct = Complex64::from_polar(1.0, p01 + p23);
    let exchange = Complex64::from_polar(1.0, p02 + p13);
    0.5 * (direct - exchange).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        fermion_from_params, qubit_from_params, BosonOrthoParams, FermionOrthoParams,
        QubitOrthoParams,
    };
    use crate::states::boson_from_params;
    use std::f64::consts::{FRAC_PI_3, LN_2, PI};

    #[test]
    fn bell_state_is_maximally_entangled() {
        let s = qubit_from_params(&QubitOrthoParams {
            alpha: FRAC_PI_2,
            delta: 0.5,
            phases: [0.0; 4],
        })
        .unwrap();
        assert!((concurrence_qubit(&s).unwrap() - 1.0).abs() < 1e-12);
        assert!((entanglement_entropy_qubit(&s).unwrap() - LN_2).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_zero_concurrence_and_entropy() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let s = TwoQubitState::new([one, zero, zero, zero]).unwrap();
        assert_eq!(concurrence_qubit(&s).unwrap(), 0.0);
        assert_eq!(entanglement_entropy_qubit(&s).unwrap(), 0.0);
    }

    #[test]
    fn partially_entangled_entropy_value() {
        // Amplitudes (sqrt(0.9), 0, 0, sqrt(0.1)): C = 0.6, eigenvalues
        // (0.9, 0.1), entropy -0.9 ln 0.9 - 0.1 ln 0.1.
        let zero = Complex64::new(0.0, 0.0);
        let s = TwoQubitState::new([
            Complex64::new(0.9_f64.sqrt(), 0.0),
            zero,
            zero,
            Complex64::new(0.1_f64.sqrt(), 0.0),
        ])
        .unwrap();
        assert!((concurrence_qubit(&s).unwrap() - 0.6).abs() < 1e-12);
        let entropy = entanglement_entropy_qubit(&s).unwrap();
        assert!((entropy - 0.325082973391448).abs() < 1e-12, "entropy {entropy}");
    }

    #[test]
    fn phase_form_matches_constructed_state() {
        for (alpha, delta, phases) in [
            (2.2, 0.3, [0.1, 0.2, 0.3, 0.45]),
            (PI, 0.5, [0.0, PI, 0.0, 0.0]),
            (4.0, 0.9, [1.0, 2.0, 3.0, 4.0]),
        ] {
            let s = qubit_from_params(&QubitOrthoParams {
                alpha,
                delta,
                phases,
            })
            .unwrap();
            let phi = phases[1] + phases[2] - phases[0] - phases[3];
            let direct = concurrence_qubit(&s).unwrap();
            let closed = phase_form_concurrence(alpha, delta, phi).unwrap();
            assert!((direct - closed).abs() < 1e-13);
        }
    }

    #[test]
    fn boson_concurrence_spans_its_range() {
        // alpha = pi/2 has no off-diagonal weight: maximally entangled.
        let top = boson_from_params(&BosonOrthoParams {
            alpha: FRAC_PI_2,
            phases: [0.0; 3],
        })
        .unwrap();
        assert!((concurrence_boson(&top).unwrap() - 1.0).abs() < 1e-12);
        // alpha = pi with aligned phases cancels the determinant exactly.
        let bottom = boson_from_params(&BosonOrthoParams {
            alpha: PI,
            phases: [0.0; 3],
        })
        .unwrap();
        assert!(concurrence_boson(&bottom).unwrap() < 1e-12);
    }

    #[test]
    fn equal_modulus_family_matches_full_concurrence() {
        let spots: [([f64; 4], f64); 2] = [([0.0; 4], 0.0), ([0.0, PI, 0.0, 0.0], 1.0)];
        for (phases, expect) in spots {
            let closed = saturating_family_concurrence(phases);
            assert!((closed - expect).abs() < 1e-12);
            let state = fermion_from_params(&FermionOrthoParams {
                alpha: FRAC_PI_3,
                beta: PI,
                lambda: 0.5,
                phases: [phases[0], phases[1], 0.0, 0.0, phases[2], phases[3]],
            })
            .unwrap();
            let full = concurrence_fermion(&state).unwrap();
            assert!((full - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn operations_reject_corrupted_states() {
        let mut s = boson_from_params(&BosonOrthoParams {
            alpha: PI,
            phases: [0.0; 3],
        })
        .unwrap();
        s.v[1][0] = -s.v[0][1];
        assert!(matches!(
            concurrence_boson(&s),
            Err(StateError::BrokenLayout(_))
        ));
    }
}
