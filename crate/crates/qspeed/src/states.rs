//! State families and their orthogonality-reaching parameterizations.
//!
//! Three families share one energy layout: each particle lives on equally
//! spaced levels with spacing `epsilon`, so the pair spans a uniform ladder.
//! Distinguishable qubits use plain amplitudes over the product basis,
//! identical bosons a symmetric coefficient matrix over two modes, identical
//! fermions an antisymmetric coefficient matrix over four modes.
//!
//! A state reaches an orthogonal configuration in finite time only for
//! special weight patterns; `*_from_params` build exactly those, keyed by
//! the unit-circle root angles of the survival polynomial.

use crate::polyroot::{PolyResult, UnitCirclePolynomial};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Norm deviation beyond which constructors reject input outright.
const CONSTRUCT_NORM_TOL: f64 = 1e-10;
/// Norm deviation beyond which [`State::validate`] reports a violation.
const VALIDATE_NORM_TOL: f64 = 1e-12;
/// Norm drift tolerated by operations on already-built states.
const OP_NORM_TOL: f64 = 1e-10;
/// Slack allowed on the fermion weight-nonnegativity constraints.
const CONSTRAINT_SLACK: f64 = 1e-12;

/// Which particle-exchange family a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Qubit,
    Boson,
    Fermion,
}

impl Family {
    /// Independent amplitudes in the interchange representation.
    pub fn amplitude_count(&self) -> usize {
        match self {
            Family::Qubit => 4,
            Family::Boson => 3,
            Family::Fermion => 6,
        }
    }

    /// Energy-ladder levels the family spans (lowest level is 0).
    pub fn level_count(&self) -> usize {
        match self {
            Family::Qubit | Family::Boson => 3,
            Family::Fermion => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Qubit => "qubit",
            Family::Boson => "boson",
            Family::Fermion => "fermion",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = StateError;

    fn from_str(s: &str) -> StateResult<Self> {
        match s {
            "qubit" => Ok(Family::Qubit),
            "boson" => Ok(Family::Boson),
            "fermion" => Ok(Family::Fermion),
            other => Err(StateError::Domain(format!(
                "unknown family {other:?}; expected qubit, boson, or fermion"
            ))),
        }
    }
}

/// A structural invariant a state fails to satisfy.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Squared amplitudes do not sum to one.
    Norm { deviation: f64 },
    /// Boson coefficient matrix is not symmetric at `(i, j)`.
    Symmetry { i: usize, j: usize },
    /// Fermion coefficient matrix is not antisymmetric at `(i, j)`;
    /// `i == j` means a nonzero diagonal entry.
    Antisymmetry { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Norm { deviation } => {
                write!(f, "norm deviates from 1 by {deviation:e}")
            }
            Violation::Symmetry { i, j } => {
                write!(f, "coefficient matrix not symmetric at ({i}, {j})")
            }
            Violation::Antisymmetry { i, j } if i == j => {
                write!(f, "antisymmetric matrix has nonzero diagonal entry ({i}, {i})")
            }
            Violation::Antisymmetry { i, j } => {
                write!(f, "coefficient matrix not antisymmetric at ({i}, {j})")
            }
        }
    }
}

/// Errors from building or operating on states.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    /// Squared amplitudes sum too far from one.
    #[error("state not normalized: norm deviates from 1 by {deviation:e}")]
    NotNormalized { deviation: f64 },
    /// A symmetry-layout invariant is broken.
    #[error("{0}")]
    BrokenLayout(Violation),
    /// A parameter lies outside its valid range.
    #[error("{0}")]
    Domain(String),
    /// An interchange record carries the wrong number of amplitudes.
    #[error("a {family} state takes {expected} amplitudes, got {got}")]
    AmplitudeCount {
        family: Family,
        expected: usize,
        got: usize,
    },
    /// Mean energy and energy spread both vanish, so no finite speed bound
    /// exists.
    #[error("mean energy and energy spread both vanish; no finite speed bound exists")]
    BothZero,
    /// Spectral weights failed polynomial validation.
    #[error(transparent)]
    Polynomial(#[from] crate::polyroot::PolyError),
}

/// Result alias for state construction and operations.
pub type StateResult<T> = Result<T, StateError>;

/// Spectral weights of a state on the uniform energy ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralWeights {
    /// Probability of each ladder level, lowest occupied level first.
    pub weights: Vec<f64>,
    /// Ladder index of `weights[0]` (fermion pair energies start at 1).
    pub energy_offset: usize,
}

impl SpectralWeights {
    /// The survival-amplitude polynomial these weights generate.
    pub fn polynomial(&self) -> PolyResult<UnitCirclePolynomial> {
        UnitCirclePolynomial::new(&self.weights)
    }
}

/// Pure state of two distinguishable qubits, amplitudes over
/// `{|00>, |01>, |10>, |11>}` with level energies `0, 1, 1, 2` in units of
/// the spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    /// Amplitudes `(c00, c01, c10, c11)`.
    pub c: [Complex64; 4],
}

impl TwoQubitState {
    /// Validates normalization (tolerance `1e-10`) and renormalizes exactly.
    pub fn new(c: [Complex64; 4]) -> StateResult<Self> {
        let sum: f64 = c.iter().map(|a| a.norm_sqr()).sum();
        let scale = normalization_scale(sum)?;
        Ok(Self {
            c: c.map(|a| a * scale),
        })
    }

    /// Structural invariants this state violates (norm only).
    pub fn validate(&self) -> Vec<Violation> {
        let sum: f64 = self.c.iter().map(|a| a.norm_sqr()).sum();
        norm_violation(sum).into_iter().collect()
    }

    /// Level probabilities `(|c00|^2, |c01|^2 + |c10|^2, |c11|^2)`.
    pub fn spectral_weights(&self) -> SpectralWeights {
        let m: Vec<f64> = self.c.iter().map(|a| a.norm_sqr()).collect();
        SpectralWeights {
            weights: renormalized(vec![m[0], m[1] + m[2], m[3]]),
            energy_offset: 0,
        }
    }
}

/// Pure state of two identical bosons on two modes with energies `0, 1`:
/// a symmetric 2x2 coefficient matrix, normalized so the spectral weights
/// `(2|v00|^2, 4|v01|^2, 2|v11|^2)` sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonCoeffMatrix {
    /// Symmetric mode-pair coefficients.
    pub v: [[Complex64; 2]; 2],
}

impl BosonCoeffMatrix {
    /// Builds from the independent entries `(v00, v01, v11)`, validating
    /// normalization (tolerance `1e-10`) and renormalizing exactly.
    pub fn new(v00: Complex64, v01: Complex64, v11: Complex64) -> StateResult<Self> {
        let sum = 2.0 * (v00.norm_sqr() + 2.0 * v01.norm_sqr() + v11.norm_sqr());
        let scale = normalization_scale(sum)?;
        Ok(Self {
            v: [[v00 * scale, v01 * scale], [v01 * scale, v11 * scale]],
        })
    }

    /// Structural invariants this state violates (norm, symmetry).
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let sum: f64 = 2.0 * self.v.iter().flatten().map(|a| a.norm_sqr()).sum::<f64>();
        violations.extend(norm_violation(sum));
        if (self.v[0][1] - self.v[1][0]).norm() > VALIDATE_NORM_TOL {
            violations.push(Violation::Symmetry { i: 0, j: 1 });
        }
        violations
    }

    /// Level probabilities `(2|v00|^2, 4|v01|^2, 2|v11|^2)`.
    pub fn spectral_weights(&self) -> SpectralWeights {
        SpectralWeights {
            weights: renormalized(vec![
                2.0 * self.v[0][0].norm_sqr(),
                2.0 * (self.v[0][1].norm_sqr() + self.v[1][0].norm_sqr()),
                2.0 * self.v[1][1].norm_sqr(),
            ]),
            energy_offset: 0,
        }
    }
}

/// Pure state of two identical fermions on four modes with energies
/// `0, 1, 2, 3`: an antisymmetric 4x4 coefficient matrix, normalized so the
/// pair-level weights `4|w_ij|^2` (summed over `i < j`) total one.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionCoeffMatrix {
    /// Antisymmetric mode-pair coefficients.
    pub w: [[Complex64; 4]; 4],
}

/// Index pairs of the independent fermion entries, in interchange order.
const FERMION_UPPER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl FermionCoeffMatrix {
    /// Builds from the independent entries
    /// `(w01, w02, w03, w12, w13, w23)`, validating normalization
    /// (tolerance `1e-10`) and renormalizing exactly.
    pub fn new(upper: [Complex64; 6]) -> StateResult<Self> {
        let sum: f64 = 4.0 * upper.iter().map(|a| a.norm_sqr()).sum::<f64>();
        let scale = normalization_scale(sum)?;
        let mut w = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (&(i, j), &a) in FERMION_UPPER.iter().zip(upper.iter()) {
            w[i][j] = a * scale;
            w[j][i] = -a * scale;
        }
        Ok(Self { w })
    }

    /// The independent entries above the diagonal, in interchange order.
    pub fn upper(&self) -> [Complex64; 6] {
        FERMION_UPPER.map(|(i, j)| self.w[i][j])
    }

    /// Structural invariants this state violates (norm, antisymmetry,
    /// nonzero diagonal).
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let sum: f64 = 2.0 * self.w.iter().flatten().map(|a| a.norm_sqr()).sum::<f64>();
        violations.extend(norm_violation(sum));
        for i in 0..4 {
            if self.w[i][i].norm() > VALIDATE_NORM_TOL {
                violations.push(Violation::Antisymmetry { i, j: i });
            }
            for j in (i + 1)..4 {
                if (self.w[i][j] + self.w[j][i]).norm() > VALIDATE_NORM_TOL {
                    violations.push(Violation::Antisymmetry { i, j });
                }
            }
        }
        violations
    }

    /// Pair-level probabilities `4(|w01|^2, |w02|^2, |w03|^2 + |w12|^2,
    /// |w13|^2, |w23|^2)` starting at ladder level 1.
    pub fn spectral_weights(&self) -> SpectralWeights {
        let m = self.upper().map(|a| a.norm_sqr());
        SpectralWeights {
            weights: renormalized(vec![
                4.0 * m[0],
                4.0 * m[1],
                4.0 * (m[2] + m[3]),
                4.0 * m[4],
                4.0 * m[5],
            ]),
            energy_offset: 1,
        }
    }
}

/// A state from any of the three families.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Qubit(TwoQubitState),
    Boson(BosonCoeffMatrix),
    Fermion(FermionCoeffMatrix),
}

impl State {
    /// The family this state belongs to.
    pub fn family(&self) -> Family {
        match self {
            State::Qubit(_) => Family::Qubit,
            State::Boson(_) => Family::Boson,
            State::Fermion(_) => Family::Fermion,
        }
    }

    /// Structural invariants this state violates; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            State::Qubit(s) => s.validate(),
            State::Boson(s) => s.validate(),
            State::Fermion(s) => s.validate(),
        }
    }

    /// Level probabilities on the uniform energy ladder.
    pub fn spectral_weights(&self) -> StateResult<SpectralWeights> {
        self.ensure_valid()?;
        Ok(match self {
            State::Qubit(s) => s.spectral_weights(),
            State::Boson(s) => s.spectral_weights(),
            State::Fermion(s) => s.spectral_weights(),
        })
    }

    /// Errors unless the state is operable: layout intact and norm within
    /// the operation tolerance `1e-10`.
    pub(crate) fn ensure_valid(&self) -> StateResult<()> {
        ensure_operable(self.validate())
    }
}

/// Turns validation results into an operation error: layout violations are
/// fatal, norm drift is tolerated up to `1e-10`.
pub(crate) fn ensure_operable(violations: Vec<Violation>) -> StateResult<()> {
    for violation in violations {
        match violation {
            Violation::Norm { deviation } if deviation <= OP_NORM_TOL => continue,
            Violation::Norm { deviation } => return Err(StateError::NotNormalized { deviation }),
            other => return Err(StateError::BrokenLayout(other)),
        }
    }
    Ok(())
}

/// Interchange form of a state: independent amplitudes as `[re, im]` pairs.
///
/// Qubits carry `(c00, c01, c10, c11)`, bosons `(v00, v01, v11)`, fermions
/// `(w01, w02, w03, w12, w13, w23)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub family: Family,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateRecord {
    /// Serializes a state into interchange form.
    pub fn from_state(state: &State) -> Self {
        let pack = |a: &Complex64| [a.re, a.im];
        let amplitudes = match state {
            State::Qubit(s) => s.c.iter().map(pack).collect(),
            State::Boson(s) => vec![
                pack(&s.v[0][0]),
                pack(&s.v[0][1]),
                pack(&s.v[1][1]),
            ],
            State::Fermion(s) => s.upper().iter().map(pack).collect(),
        };
        StateRecord {
            family: state.family(),
            amplitudes,
        }
    }

    /// Rebuilds the state, validating count and normalization.
    pub fn to_state(&self) -> StateResult<State> {
        let expected = self.family.amplitude_count();
        if self.amplitudes.len() != expected {
            return Err(StateError::AmplitudeCount {
                family: self.family,
                expected,
                got: self.amplitudes.len(),
            });
        }
        let a: Vec<Complex64> = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Ok(match self.family {
            Family::Qubit => State::Qubit(TwoQubitState::new([a[0], a[1], a[2], a[3]])?),
            Family::Boson => State::Boson(BosonCoeffMatrix::new(a[0], a[1], a[2])?),
            Family::Fermion => State::Fermion(FermionCoeffMatrix::new([
                a[0], a[1], a[2], a[3], a[4], a[5],
            ])?),
        })
    }
}

/// Parameters of an orthogonality-reaching two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitOrthoParams {
    /// First root angle of the survival polynomial, in `[pi/2, 3*pi/2]`.
    pub alpha: f64,
    /// Fraction of the middle-level weight carried by `|01>`, in `[0, 1]`.
    pub delta: f64,
    /// Phases of `(c00, c01, c10, c11)`.
    pub phases: [f64; 4],
}

/// Parameters of an orthogonality-reaching two-boson state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BosonOrthoParams {
    /// First root angle of the survival polynomial, in `[pi/2, 3*pi/2]`.
    pub alpha: f64,
    /// Phases of `(v00, v01, v11)`.
    pub phases: [f64; 3],
}

/// Parameters of an orthogonality-reaching two-fermion state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermionOrthoParams {
    /// Root-pair angles of the factored survival polynomial, each in
    /// `(0, pi]`, constrained by `cos(alpha) + cos(beta) <= 0` and
    /// `1 + 2 cos(alpha) cos(beta) >= 0`.
    pub alpha: f64,
    pub beta: f64,
    /// Fraction of the shared level-3 weight carried by `w03`, in `[0, 1]`.
    pub lambda: f64,
    /// Phases of `(w01, w02, w03, w12, w13, w23)`.
    pub phases: [f64; 6],
}

/// Parameters for any family, as stored alongside sampled points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrthoParams {
    Qubit(QubitOrthoParams),
    Boson(BosonOrthoParams),
    Fermion(FermionOrthoParams),
}

impl OrthoParams {
    /// The family these parameters describe.
    pub fn family(&self) -> Family {
        match self {
            OrthoParams::Qubit(_) => Family::Qubit,
            OrthoParams::Boson(_) => Family::Boson,
            OrthoParams::Fermion(_) => Family::Fermion,
        }
    }

    /// Builds the described state.
    pub fn build(&self) -> StateResult<State> {
        Ok(match self {
            OrthoParams::Qubit(p) => State::Qubit(qubit_from_params(p)?),
            OrthoParams::Boson(p) => State::Boson(boson_from_params(p)?),
            OrthoParams::Fermion(p) => State::Fermion(fermion_from_params(p)?),
        })
    }
}

/// Builds the two-qubit state whose survival polynomial first vanishes at
/// angle `alpha`.
///
/// With `Gamma = 1 / (2 (1 - cos alpha))` the squared moduli are
/// `|c00|^2 = |c11|^2 = Gamma` and `|c01|^2, |c10|^2` splitting
/// `-2 Gamma cos alpha` in proportion `delta : 1 - delta`; `cos alpha <= 0`
/// keeps every weight nonnegative.
pub fn qubit_from_params(params: &QubitOrthoParams) -> StateResult<TwoQubitState> {
    let QubitOrthoParams {
        alpha,
        delta,
        phases,
    } = *params;
    if !(FRAC_PI_2..=3.0 * FRAC_PI_2).contains(&alpha) {
        return Err(StateError::Domain(format!(
            "alpha = {alpha} outside [pi/2, 3*pi/2] (weights need cos(alpha) <= 0)"
        )));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(StateError::Domain(format!("delta = {delta} outside [0, 1]")));
    }
    let gamma = 1.0 / (2.0 * (1.0 - alpha.cos()));
    let middle = (-2.0 * gamma * alpha.cos()).max(0.0);
    let moduli = [
        gamma.sqrt(),
        (delta * middle).sqrt(),
        ((1.0 - delta) * middle).sqrt(),
        gamma.sqrt(),
    ];
    let mut c = [Complex64::new(0.0, 0.0); 4];
    for k in 0..4 {
        c[k] = Complex64::from_polar(moduli[k], phases[k]);
    }
    TwoQubitState::new(c)
}

/// Builds the two-boson state whose survival polynomial first vanishes at
/// angle `alpha`.
///
/// With `Gamma = 1 / (4 (1 - cos alpha))` the squared moduli are
/// `|v00|^2 = |v11|^2 = Gamma` and `|v01|^2 = -Gamma cos alpha`;
/// `cos alpha <= 0` keeps every weight nonnegative.
pub fn boson_from_params(params: &BosonOrthoParams) -> StateResult<BosonCoeffMatrix> {
    let BosonOrthoParams { alpha, phases } = *params;
    if !(FRAC_PI_2..=3.0 * FRAC_PI_2).contains(&alpha) {
        return Err(StateError::Domain(format!(
            "alpha = {alpha} outside [pi/2, 3*pi/2] (weights need cos(alpha) <= 0)"
        )));
    }
    let gamma = 1.0 / (4.0 * (1.0 - alpha.cos()));
    let off = (-gamma * alpha.cos()).max(0.0);
    BosonCoeffMatrix::new(
        Complex64::from_polar(gamma.sqrt(), phases[0]),
        Complex64::from_polar(off.sqrt(), phases[1]),
        Complex64::from_polar(gamma.sqrt(), phases[2]),
    )
}

/// Builds the two-fermion state whose survival polynomial factors into
/// unit-circle root pairs at angles `alpha` and `beta`.
///
/// With `x = 1 / (16 (1 - cos alpha)(1 - cos beta))` the squared moduli are
/// `|w01|^2 = |w23|^2 = x`, `|w02|^2 = |w13|^2 = -2x (cos alpha + cos beta)`,
/// and `|w03|^2 + |w12|^2 = 2x (1 + 2 cos alpha cos beta)` split in
/// proportion `lambda : 1 - lambda`. The two cosine constraints keep every
/// weight nonnegative and are enforced with slack `1e-12`.
pub fn fermion_from_params(params: &FermionOrthoParams) -> StateResult<FermionCoeffMatrix> {
    let FermionOrthoParams {
        alpha,
        beta,
        lambda,
        phases,
    } = *params;
    for (name, angle) in [("alpha", alpha), ("beta", beta)] {
        if !(angle > 0.0 && angle <= PI) {
            return Err(StateError::Domain(format!(
                "{name} = {angle} outside (0, pi]"
            )));
        }
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(StateError::Domain(format!(
            "lambda = {lambda} outside [0, 1]"
        )));
    }
    let ca = alpha.cos();
    let cb = beta.cos();
    if ca + cb > CONSTRAINT_SLACK {
        return Err(StateError::Domain(format!(
            "cos(alpha) + cos(beta) = {} must be <= 0 for nonnegative weights",
            ca + cb
        )));
    }
    let cross = 1.0 + 2.0 * ca * cb;
    if cross < -CONSTRAINT_SLACK {
        return Err(StateError::Domain(format!(
            "1 + 2 cos(alpha) cos(beta) = {cross} must be >= 0 for nonnegative weights"
        )));
    }
    let x = 1.0 / (16.0 * (1.0 - ca) * (1.0 - cb));
    let pair = (-2.0 * x * (ca + cb)).max(0.0);
    let shared = (2.0 * x * cross).max(0.0);
    let moduli = [
        x.sqrt(),
        pair.sqrt(),
        (lambda * shared).sqrt(),
        ((1.0 - lambda) * shared).sqrt(),
        pair.sqrt(),
        x.sqrt(),
    ];
    let mut upper = [Complex64::new(0.0, 0.0); 6];
    for k in 0..6 {
        upper[k] = Complex64::from_polar(moduli[k], phases[k]);
    }
    FermionCoeffMatrix::new(upper)
}

/// Checks a squared norm against the construction tolerance and returns the
/// exact renormalization factor.
fn normalization_scale(norm_sqr: f64) -> StateResult<f64> {
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > CONSTRUCT_NORM_TOL {
        return Err(StateError::NotNormalized { deviation });
    }
    Ok(1.0 / norm_sqr.sqrt())
}

/// Norm violation entry for [`State::validate`], if any.
fn norm_violation(norm_sqr: f64) -> Option<Violation> {
    let deviation = (norm_sqr - 1.0).abs();
    (deviation > VALIDATE_NORM_TOL).then_some(Violation::Norm { deviation })
}

/// Rescales weights to sum to exactly one, absorbing rounding drift.
fn renormalized(mut weights: Vec<f64>) -> Vec<f64> {
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    weights
}
