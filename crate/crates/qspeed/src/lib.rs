//! Entanglement and evolution speed for bipartite pure states.
//!
//! Three families of two-particle states with equally spaced single-particle
//! energy levels are covered: two distinguishable qubits, two bosons on two
//! modes, and two fermions on four modes. For each family the crate builds
//! the states that reach an orthogonal configuration in finite time, computes
//! their concurrence, locates the orthogonality time as a root of the
//! survival-amplitude polynomial on the unit circle, and compares it against
//! the quantum speed limit set by the mean energy and the energy spread.
//!
//! Internally everything runs in natural units (`hbar = 1`, level spacing
//! `epsilon = 1`); times are expressed in units of `hbar/epsilon` and angles
//! in radians. [`EnergyLadder`] rescales reports to physical units.

pub mod analysis;
pub mod dynamics;
pub mod entanglement;
pub mod polyroot;
pub mod states;

pub use analysis::{
    boson_extremal_alphas, boson_ratio_of_alpha, brute_force_tau, fermion_ratio_of_alpha,
    fermion_tmin_of_alpha, point_from_params, qubit_extremal_curves, qubit_ratio_of_gamma,
    sample_fermion_region, sample_states, verify, SpeedPoint, StateCheck, VerificationFailure,
    VerificationReport,
};
pub use dynamics::{
    energy_moments, evolve, orthogonality_time, overlap, speed_report, t_min_boson_fixed,
    t_min_bound, EnergyLadder, EnergyMoments, SpeedReport, TminVariant,
};
pub use entanglement::{
    concurrence, concurrence_boson, concurrence_fermion, concurrence_qubit,
    entanglement_entropy_qubit, entropy_of_concurrence, phase_form_concurrence,
    saturating_family_concurrence,
};
pub use polyroot::{
    first_orthogonality_angle, PolyError, PolyResult, UnitCirclePolynomial, CIRCLE_TOL,
};
pub use states::{
    boson_from_params, fermion_from_params, qubit_from_params, BosonCoeffMatrix,
    BosonOrthoParams, Family, FermionCoeffMatrix, FermionOrthoParams, OrthoParams,
    QubitOrthoParams, SpectralWeights, State, StateError, StateRecord, StateResult,
    TwoQubitState, Violation,
};
