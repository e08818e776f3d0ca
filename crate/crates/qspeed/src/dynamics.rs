//! Time evolution, energy moments, and the quantum speed limit.
//!
//! Evolution multiplies each amplitude by `exp(-i E t)` with `E` the total
//! ladder level of its basis element. The minimum time any state needs to
//! reach an orthogonal configuration is bounded below by
//! `max(pi/(2 <H>), pi/(2 dH))` in natural units; [`speed_report`] compares
//! that bound against the actual first orthogonality time when one exists.

use crate::entanglement::concurrence;
use crate::polyroot::CIRCLE_TOL;
use crate::states::{Family, State, StateError, StateResult};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Which minimum-time bound a report quotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TminVariant {
    /// `max(pi/(2 <H>), pi/(2 dH))`, dropping a branch whose moment is zero.
    General,
    /// The constant `pi/2 * hbar/epsilon` quoted for the boson family; a
    /// valid lower bound there because the energy spread never exceeds the
    /// level spacing.
    BosonFixed,
}

/// Physical scale of the uniform ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLadder {
    /// Level spacing (energy units).
    pub epsilon: f64,
    /// Reduced Planck constant (energy times time units).
    pub hbar: f64,
}

impl EnergyLadder {
    /// Natural units: `epsilon = hbar = 1`.
    pub fn natural() -> Self {
        Self {
            epsilon: 1.0,
            hbar: 1.0,
        }
    }

    /// Validates a physical scale; both constants must be positive.
    pub fn new(epsilon: f64, hbar: f64) -> StateResult<Self> {
        if !(epsilon > 0.0) {
            return Err(StateError::Domain(format!(
                "epsilon = {epsilon} must be positive"
            )));
        }
        if !(hbar > 0.0) {
            return Err(StateError::Domain(format!("hbar = {hbar} must be positive")));
        }
        Ok(Self { epsilon, hbar })
    }

    /// The unit all times scale by: `hbar / epsilon`.
    pub fn time_unit(&self) -> f64 {
        self.hbar / self.epsilon
    }
}

impl Default for EnergyLadder {
    fn default() -> Self {
        Self::natural()
    }
}

/// Mean energy, second moment, and spread, in units of the level spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyMoments {
    /// `<H>`.
    pub e_mean: f64,
    /// `<H^2>`.
    pub h2_mean: f64,
    /// `sqrt(<H^2> - <H>^2)`.
    pub delta_e: f64,
}

/// Energy moments of a state over its spectral weights.
pub fn energy_moments(state: &State) -> StateResult<EnergyMoments> {
    let spectral = state.spectral_weights()?;
    let mut e_mean = 0.0;
    let mut h2_mean = 0.0;
    for (k, &p) in spectral.weights.iter().enumerate() {
        let level = (k + spectral.energy_offset) as f64;
        e_mean += p * level;
        h2_mean += p * level * level;
    }
    let delta_e = (h2_mean - e_mean * e_mean).max(0.0).sqrt();
    Ok(EnergyMoments {
        e_mean,
        h2_mean,
        delta_e,
    })
}

/// Evolves a state for time `t` (natural units): each amplitude picks up
/// `exp(-i E t)` with `E` its total ladder level.
pub fn evolve(state: &State, t: f64) -> StateResult<State> {
    match state {
        State::Qubit(s) => {
            crate::states::ensure_operable(s.validate())?;
            let energies = [0.0, 1.0, 1.0, 2.0];
            let mut c = s.c;
            for (a, e) in c.iter_mut().zip(energies) {
                *a *= Complex64::from_polar(1.0, -e * t);
            }
            Ok(State::Qubit(crate::states::TwoQubitState { c }))
        }
        State::Boson(s) => {
            crate::states::ensure_operable(s.validate())?;
            let mut v = s.v;
            for (i, row) in v.iter_mut().enumerate() {
                for (j, a) in row.iter_mut().enumerate() {
                    *a *= Complex64::from_polar(1.0, -((i + j) as f64) * t);
                }
            }
            Ok(State::Boson(crate::states::BosonCoeffMatrix { v }))
        }
        State::Fermion(s) => {
            crate::states::ensure_operable(s.validate())?;
            let mut w = s.w;
            for (i, row) in w.iter_mut().enumerate() {
                for (j, a) in row.iter_mut().enumerate() {
                    *a *= Complex64::from_polar(1.0, -((i + j) as f64) * t);
                }
            }
            Ok(State::Fermion(crate::states::FermionCoeffMatrix { w }))
        }
    }
}

/// Survival amplitude `<psi(0)|psi(t)>`, computed from the spectral weights.
pub fn overlap(state: &State, t: f64) -> StateResult<Complex64> {
    let spectral = state.spectral_weights()?;
    let poly = spectral.polynomial()?;
    let z = Complex64::from_polar(1.0, -t);
    let offset_phase = Complex64::from_polar(1.0, -(spectral.energy_offset as f64) * t);
    Ok(poly.eval(z) * offset_phase)
}

/// Minimum-time bound `max(pi/(2 <H>), pi/(2 dH))` in natural units.
///
/// A branch whose moment vanishes is dropped; when both vanish the state is
/// stationary at the ladder floor and no finite bound exists.
pub fn t_min_bound(moments: &EnergyMoments) -> StateResult<f64> {
    let mut bound: Option<f64> = None;
    if moments.e_mean > 0.0 {
        bound = Some(FRAC_PI_2 / moments.e_mean);
    }
    if moments.delta_e > 0.0 {
        let spread = FRAC_PI_2 / moments.delta_e;
        bound = Some(bound.map_or(spread, |b| b.max(spread)));
    }
    bound.ok_or(StateError::BothZero)
}

/// The constant boson-family bound `pi/2` in natural units.
pub fn t_min_boson_fixed() -> f64 {
    FRAC_PI_2
}

/// Everything the speed-limit comparison produces for one state.
///
/// Times are in units of `hbar/epsilon` and energies in units of `epsilon`;
/// fresh reports are in natural units and [`SpeedReport::in_units`] rescales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedReport {
    pub family: Family,
    pub concurrence: f64,
    pub e_mean: f64,
    pub delta_e: f64,
    /// Speed-limit bound on the orthogonality time.
    pub t_min: f64,
    /// First orthogonality time; absent when the state never reaches an
    /// orthogonal configuration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// `tau / t_min`; at least 1 up to rounding whenever present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    /// All unit-circle root angles of the survival polynomial, ascending.
    pub root_angles: Vec<f64>,
}

impl SpeedReport {
    /// Rescales times by `hbar/epsilon` and energies by `epsilon`.
    pub fn in_units(&self, ladder: &EnergyLadder) -> SpeedReport {
        let tu = ladder.time_unit();
        SpeedReport {
            family: self.family,
            concurrence: self.concurrence,
            e_mean: self.e_mean * ladder.epsilon,
            delta_e: self.delta_e * ladder.epsilon,
            t_min: self.t_min * tu,
            tau: self.tau.map(|t| t * tu),
            ratio: self.ratio,
            root_angles: self.root_angles.clone(),
        }
    }
}

/// Full speed-limit comparison with a chosen bound variant.
pub fn speed_report(state: &State, variant: TminVariant) -> StateResult<SpeedReport> {
    let moments = energy_moments(state)?;
    let spectral = state.spectral_weights()?;
    let poly = spectral.polynomial()?;
    let root_angles = poly.unit_circle_roots(CIRCLE_TOL);
    let tau = root_angles.first().copied();
    let t_min = match variant {
        TminVariant::General => t_min_bound(&moments)?,
        TminVariant::BosonFixed => {
            if state.family() != Family::Boson {
                return Err(StateError::Domain(format!(
                    "the fixed pi/2 bound applies to bosons, not {}",
                    state.family()
                )));
            }
            t_min_boson_fixed()
        }
    };
    Ok(SpeedReport {
        family: state.family(),
        concurrence: concurrence(state)?,
        e_mean: moments.e_mean,
        delta_e: moments.delta_e,
        t_min,
        tau,
        ratio: tau.map(|t| t / t_min),
        root_angles,
    })
}

/// Speed-limit comparison with the general two-moment bound.
pub fn orthogonality_time(state: &State) -> StateResult<SpeedReport> {
    speed_report(state, TminVariant::General)
}
