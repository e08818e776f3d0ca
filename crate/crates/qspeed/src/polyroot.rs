//! Roots of survival-amplitude polynomials on the unit circle.
//!
//! A state with equally spaced energy levels has survival amplitude
//! `S(t) = sum_k p_k exp(-i k t)` in natural units, i.e. a polynomial in
//! `z = exp(-i t)` whose coefficients are the nonnegative spectral weights.
//! The state reaches an orthogonal configuration exactly when that polynomial
//! vanishes somewhere on the unit circle, so this module is built around
//! locating unit-circle roots and their angles.
//!
//! Root finding has two lanes. The state families all produce symmetric
//! weights (`p_k = p_{d-k}`), for which `exp(-i d t / 2) P(exp(i t))` is a
//! real cosine series: its sign changes bracket roots for plain bisection,
//! and an exact root at angle pi peels off by synthetic division, so roots
//! stay separated even when the modulus between them never rises above the
//! acceptance tolerance. Asymmetric coefficient lists fall back to a hybrid
//! of Durand-Kerner candidates and golden-section polishing of bracketed
//! circle-modulus minima.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use thiserror::Error;

/// Default residual tolerance for accepting a unit-circle root.
pub const CIRCLE_TOL: f64 = 1e-9;

/// Largest supported polynomial degree (a four-level two-fermion state,
/// before factoring, spans six levels and degree five).
pub const MAX_DEGREE: usize = 5;

/// Grid resolution of the circle-modulus scan.
const SCAN_POINTS: usize = 2048;

/// Angles closer than this are reported as one root.
const ANGLE_DEDUP: f64 = 1e-9;

/// Grid resolution of the rotated-amplitude sign scan.
const SIGN_SCAN_POINTS: usize = 8192;

/// Amplitude samples at most this size carry no trustworthy sign.
const SIGN_FLOOR: f64 = 1e-12;

/// Stationary values at most this size mark an even-order touch of zero.
const TOUCH_FLOOR: f64 = 1e-15;

/// Synthetic-division remainders at most this size mark an exact factor.
const REMAINDER_FLOOR: f64 = 3e-14;

/// Scan candidates this close to a deflation-derived angle defer to it.
const DEFLATION_WINDOW: f64 = 1e-4;

/// Amplitude dips below this gate are probed for roots hiding between
/// samples without a visible sign change.
const DIP_GATE: f64 = 1e-2;

/// Reasons a coefficient list cannot form a spectral-weight polynomial.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    /// Every coefficient is zero, so there is no root structure to analyze.
    #[error("all polynomial coefficients are zero")]
    ZeroPolynomial,
    /// Spectral weights are probabilities and may not be negative.
    #[error("coefficient {index} is negative ({value:e}); weights must be nonnegative")]
    NegativeCoefficient { index: usize, value: f64 },
    /// The weights of a normalized state must sum to one.
    #[error("coefficients sum to {sum:.15} instead of 1 (tolerance 1e-12)")]
    NotNormalized { sum: f64 },
    /// Degree after stripping trailing zeros exceeds [`MAX_DEGREE`].
    #[error("degree {degree} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooHigh { degree: usize },
}

/// Result alias for polynomial construction.
pub type PolyResult<T> = Result<T, PolyError>;

/// A polynomial with nonnegative real coefficients summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCirclePolynomial {
    coeffs: Vec<f64>,
}

impl UnitCirclePolynomial {
    /// Validates spectral weights (low power first) and strips trailing zeros.
    pub fn new(weights: &[f64]) -> PolyResult<Self> {
        for (index, &value) in weights.iter().enumerate() {
            if value < 0.0 {
                return Err(PolyError::NegativeCoefficient { index, value });
            }
        }
        let len = weights
            .iter()
            .rposition(|&c| c != 0.0)
            .map(|last| last + 1)
            .ok_or(PolyError::ZeroPolynomial)?;
        let coeffs = weights[..len].to_vec();
        let degree = len - 1;
        if degree > MAX_DEGREE {
            return Err(PolyError::DegreeTooHigh { degree });
        }
        let sum: f64 = coeffs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(PolyError::NotNormalized { sum });
        }
        Ok(Self { coeffs })
    }

    /// Coefficients in increasing powers, trailing zeros removed.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree after stripping trailing zeros.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the polynomial by Horner's rule.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluates at `exp(i theta)` on the unit circle.
    pub fn eval_circle(&self, theta: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, theta))
    }

    /// Squared circle modulus by compensated (double-double) Horner.
    ///
    /// Plain evaluation carries an absolute rounding floor near `1e-17`,
    /// which caps how precisely a magnitude search can localize a root
    /// whose local slope nearby roots have depressed; the compensated pass
    /// lowers that floor to roughly `1e-32`, keeping bracket refinement
    /// slope-limited rather than noise-limited.
    pub(crate) fn modulus_sqr_refined(&self, theta: f64) -> f64 {
        let zr = theta.cos();
        let zi = theta.sin();
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for &c in self.coeffs.iter().rev() {
            let next_re = re.scale(zr).sub(im.scale(zi)).add_f64(c);
            let next_im = re.scale(zi).add(im.scale(zr));
            re = next_re;
            im = next_im;
        }
        re.mul(re).add(im.mul(im)).hi.max(0.0)
    }

    /// Evaluates the `order`-th derivative at `z` by Horner's rule.
    pub fn eval_derivative(&self, z: Complex64, order: usize) -> Complex64 {
        if order == 0 {
            return self.eval(z);
        }
        if order > self.degree() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (order..self.coeffs.len()).rev() {
            let falling: f64 = (j - order + 1..=j).product::<usize>() as f64;
            acc = acc * z + falling * self.coeffs[j];
        }
        acc
    }

    /// All complex roots, multiplicity preserved, sorted by angle then radius.
    ///
    /// Uses Durand-Kerner iteration. Isolated roots come out near machine
    /// precision; an m-fold root appears as a cluster of m values whose
    /// spread grows like the 1/m power of rounding error, but the residual
    /// `|P(root)|` stays below `1e-9` times the largest coefficient.
    pub fn roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[d];
        let monic: Vec<f64> = self.coeffs.iter().map(|c| c / lead).collect();
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32 + 1)).collect();
        for _ in 0..500 {
            let mut max_step = 0.0_f64;
            for i in 0..d {
                let zi = roots[i];
                let mut denom = Complex64::new(1.0, 0.0);
                for (j, &zj) in roots.iter().enumerate() {
                    if j != i {
                        denom *= zi - zj;
                    }
                }
                if denom.norm_sqr() == 0.0 {
                    roots[i] += Complex64::new(1e-12, 1e-12);
                    max_step = max_step.max(1e-12);
                    continue;
                }
                let mut value = Complex64::new(1.0, 0.0);
                for &c in monic[..d].iter().rev() {
                    value = value * zi + c;
                }
                let step = value / denom;
                roots[i] = zi - step;
                max_step = max_step.max(step.norm());
            }
            if max_step < 1e-14 {
                break;
            }
        }
        roots.sort_unstable_by(|a, b| {
            let ka = (canonical_angle(a.arg()), a.norm());
            let kb = (canonical_angle(b.arg()), b.norm());
            ka.partial_cmp(&kb).expect("finite root coordinates")
        });
        roots
    }

    /// Angles of the unit-circle roots, ascending in `(0, 2*pi]`.
    ///
    /// Symmetric coefficient lists (every state family) go through the real
    /// rotated amplitude: sign-change bisection plus exact deflation of a
    /// root at angle pi, which keeps neighboring roots separated even when
    /// the modulus between them never rises above `tol`. Other lists use
    /// bracketed circle-modulus minima polished by golden-section search
    /// together with near-circle Durand-Kerner candidates. Angles closer
    /// than `1e-9` collapse to one entry, so a multiple root is reported
    /// once.
    pub fn unit_circle_roots(&self, tol: f64) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let mut angles = if self.is_palindromic() {
            self.palindromic_circle_roots(tol)
        } else {
            self.generic_circle_roots(tol)
        };
        angles.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        angles.dedup_by(|a, b| (*a - *b).abs() < ANGLE_DEDUP);
        angles
    }

    /// Whether the coefficients are symmetric (`p_k = p_{d-k}`).
    fn is_palindromic(&self) -> bool {
        let d = self.degree();
        let scale = self.coeffs.iter().fold(0.0_f64, |m, &c| m.max(c.abs()));
        (0..=d / 2).all(|k| (self.coeffs[k] - self.coeffs[d - k]).abs() <= 1e-9 * scale)
    }

    /// Root angles of a symmetric-coefficient polynomial.
    ///
    /// Works on the real rotated amplitude `Q`: firm sign changes between
    /// scan samples bisect directly; a root at angle pi is peeled off by
    /// repeated synthetic division, and the exact quotient's remaining
    /// angles follow in closed form, which resolves roots crowded so close
    /// to pi that the modulus never rises above `tol` between them. Dips
    /// that reach [`DIP_GATE`] without a sign change are classified at
    /// their stationary point as an even-order touch, a sub-spacing
    /// crossing pair, or a near-miss within `tol`.
    fn palindromic_circle_roots(&self, tol: f64) -> Vec<f64> {
        let amp = RotatedAmplitude::new(&self.coeffs);
        let mut found: Vec<f64> = Vec::new();
        let mut deflated: Vec<f64> = Vec::new();

        // Exact deflation of a root at pi: the remainder of division by
        // (1 + z) is an alternating coefficient sum, free of the rounding
        // cancellation that caps circle-modulus evaluation.
        let mut pi_root = false;
        {
            let mut reduced = amp.weights().to_vec();
            let mut multiplicity = 0_usize;
            while reduced.len() > 1 {
                let mut trial = reduced.clone();
                if divide_out_minus_one(&mut trial).abs() > REMAINDER_FLOOR {
                    break;
                }
                reduced = trial;
                multiplicity += 1;
            }
            if multiplicity > 0 {
                pi_root = true;
                found.push(PI);
                for angle in palindromic_factor_angles(reduced) {
                    if (angle - PI).abs() > ANGLE_DEDUP {
                        deflated.push(angle);
                    }
                }
                found.extend(deflated.iter().copied());
            }
        }
        let superseded = |t: f64| {
            (pi_root && (t - PI).abs() <= DEFLATION_WINDOW)
                || deflated.iter().any(|&e| (t - e).abs() <= DEFLATION_WINDOW)
        };

        let n = SIGN_SCAN_POINTS;
        let h = TAU / n as f64;
        let values: Vec<f64> = (0..=n).map(|j| amp.value(h * j as f64)).collect();
        let firm = |v: f64| v.abs() > SIGN_FLOOR;

        // Sign changes between firmly signed neighbors bisect directly.
        for j in 0..n {
            let (a, b) = (values[j], values[j + 1]);
            if firm(a) && firm(b) && (a > 0.0) != (b > 0.0) {
                let root =
                    bisect_sign_change(|t| amp.value(t), h * j as f64, h * (j + 1) as f64);
                if !superseded(root) {
                    found.push(root);
                }
            }
        }

        // Runs of rounding-level samples: flanking signs that differ still
        // mean one crossing; matching signs mean a possible touch. The scan
        // ends are safe flanks because `|Q(0)| = |Q(2 pi)| = 1`.
        let mut j = 1;
        while j < n {
            if firm(values[j]) {
                j += 1;
                continue;
            }
            let start = j;
            while j < n && !firm(values[j]) {
                j += 1;
            }
            let (lo_idx, hi_idx) = (start - 1, j);
            let (a, b) = (values[lo_idx], values[hi_idx]);
            let (lo, hi) = (h * lo_idx as f64, h * hi_idx as f64);
            if (a > 0.0) != (b > 0.0) {
                let root = bisect_sign_change(|t| amp.value(t), lo, hi);
                if !superseded(root) {
                    found.push(root);
                }
            } else if !(pi_root && lo <= PI && PI <= hi) {
                self.probe_dip(&amp, lo, hi, tol, &superseded, &mut found);
            }
        }

        // Firm same-sign dips below the gate: the scan slope bound
        // `(d / 2) * h` guarantees every root not already seen as a sign
        // change or rounding-level run sits under one of these.
        for j in 1..n {
            let v = values[j];
            if !firm(v) || v.abs() > DIP_GATE {
                continue;
            }
            let (a, b) = (values[j - 1], values[j + 1]);
            if firm(a)
                && firm(b)
                && v.abs() <= a.abs()
                && v.abs() <= b.abs()
                && (a > 0.0) == (v > 0.0)
                && (b > 0.0) == (v > 0.0)
            {
                let (lo, hi) = (h * (j - 1) as f64, h * (j + 1) as f64);
                if pi_root && lo <= PI && PI <= hi {
                    continue;
                }
                self.probe_dip(&amp, lo, hi, tol, &superseded, &mut found);
            }
        }

        found.retain(|&t| amp.value(t).abs() <= tol);
        found
    }

    /// Classifies a dip of the rotated amplitude on `[lo, hi]` showing no
    /// sign change at the scan resolution, appending any roots it hides.
    fn probe_dip(
        &self,
        amp: &RotatedAmplitude,
        lo: f64,
        hi: f64,
        tol: f64,
        superseded: &dyn Fn(f64) -> bool,
        found: &mut Vec<f64>,
    ) {
        let slope_lo = amp.derivative(lo, 1);
        let slope_hi = amp.derivative(hi, 1);
        if slope_lo == 0.0 || slope_hi == 0.0 || (slope_lo > 0.0) == (slope_hi > 0.0) {
            return;
        }
        let stationary = bisect_sign_change(|t| amp.derivative(t, 1), lo, hi);
        let r = amp.value(stationary);
        let shoulder_positive = amp.value(lo) > 0.0;
        if r.abs() <= TOUCH_FLOOR {
            // Even-order touch. The touch order is the first derivative
            // order that is firm relative to its own coefficient scale;
            // its predecessor has a simple sign change at the root.
            let mut order = self.degree();
            for m in 2..=self.degree() {
                if amp.derivative(stationary, m).abs() > 0.01 * amp.scale(m) {
                    order = m;
                    break;
                }
            }
            let mut touch = stationary;
            if order > 2 {
                let g = |t: f64| amp.derivative(t, order - 1);
                if (g(lo) > 0.0) != (g(hi) > 0.0) {
                    touch = bisect_sign_change(g, lo, hi);
                }
            }
            if !superseded(touch) {
                found.push(touch);
            }
        } else if (r > 0.0) != shoulder_positive {
            // The dip crosses zero between samples: two hidden roots.
            for (a, b) in [(lo, stationary), (stationary, hi)] {
                let root = bisect_sign_change(|t| amp.value(t), a, b);
                if !superseded(root) {
                    found.push(root);
                }
            }
        } else if r.abs() <= tol && !superseded(stationary) {
            // Closest approach within tolerance without vanishing.
            found.push(stationary);
        }
    }

    /// Root angles of an asymmetric coefficient list.
    ///
    /// Candidates come from bracketed minima of the circle modulus and from
    /// Durand-Kerner roots lying near the circle; each is polished by
    /// golden-section search and kept when the residual modulus is at most
    /// `tol`.
    fn generic_circle_roots(&self, tol: f64) -> Vec<f64> {
        let mut candidates = Vec::new();
        let n = SCAN_POINTS;
        let spacing = TAU / n as f64;
        let g: Vec<f64> = (0..n)
            .map(|j| self.eval_circle(spacing * j as f64).norm_sqr())
            .collect();
        for j in 0..n {
            let prev = g[(j + n - 1) % n];
            let next = g[(j + 1) % n];
            if g[j] <= prev && g[j] <= next && (g[j] < prev || g[j] < next) {
                let center = spacing * j as f64;
                candidates.push(golden_min(
                    |t| self.eval_circle(t).norm_sqr(),
                    center - spacing,
                    center + spacing,
                ));
            }
        }
        // Near-circle Durand-Kerner candidates resolve twin roots that share
        // one scan interval. A micro-bracket around each is polished; results
        // pinned to a bracket edge are strays from a smeared root cluster
        // whose true minimum lies elsewhere, and are dropped.
        for root in self.roots() {
            if (root.norm() - 1.0).abs() > 1e-2 {
                continue;
            }
            let theta = canonical_angle(root.arg());
            let lo = theta - 1e-7;
            let hi = theta + 1e-7;
            let polished = golden_min(|t| self.eval_circle(t).norm_sqr(), lo, hi);
            if polished - lo < 1e-10 || hi - polished < 1e-10 {
                continue;
            }
            candidates.push(polished);
        }
        let mut passed: Vec<f64> = candidates
            .into_iter()
            .map(canonical_angle)
            .filter(|&t| self.eval_circle(t).norm() <= tol)
            .collect();
        passed.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite angles"));
        // A root of multiplicity m keeps the modulus below tol over an arc
        // of width ~tol^(1/m), so several polished candidates can describe
        // one root. Candidates whose connecting arc never rises above tol
        // belong to the same root and collapse to one sharpened angle.
        let mut clusters: Vec<Vec<f64>> = Vec::new();
        for t in passed {
            match clusters.last_mut() {
                Some(c) if self.arc_stays_below(*c.last().expect("nonempty"), t, tol) => {
                    c.push(t);
                }
                _ => clusters.push(vec![t]),
            }
        }
        clusters
            .iter()
            .map(|c| self.sharpen_cluster(c, tol))
            .collect()
    }

    /// Whether the modulus stays at most `tol` on the whole arc `[a, b]`.
    fn arc_stays_below(&self, a: f64, b: f64, tol: f64) -> bool {
        let span = b - a;
        if span <= ANGLE_DEDUP {
            return true;
        }
        (1..64).all(|k| {
            self.eval_circle(a + span * k as f64 / 64.0).norm() <= tol
        })
    }

    /// Best single angle for a cluster of sub-`tol` candidates.
    ///
    /// Golden-section search on the modulus stalls at the rounding-noise
    /// floor `eps^(1/(2m))` of an m-fold root, so the cluster is sharpened
    /// through the root's flatness order instead: the modulus decays by
    /// 2^m per halving of the distance just outside the sub-`tol` plateau,
    /// which pins m, and the (m-1)-th derivative has a simple zero at the
    /// root, where golden-section localizes to near machine precision.
    fn sharpen_cluster(&self, cluster: &[f64], tol: f64) -> f64 {
        let residual = |t: f64| self.eval_circle(t).norm();
        let best = cluster
            .iter()
            .copied()
            .min_by(|a, b| {
                residual(*a)
                    .partial_cmp(&residual(*b))
                    .expect("finite residuals")
            })
            .expect("nonempty cluster");
        let left = self.plateau_edge(best, -1.0, tol);
        let right = self.plateau_edge(best, 1.0, tol);
        let center = 0.5 * (left + right);
        let half_width = 0.5 * (right - left);
        let delta = 4.0 * (half_width + 1e-5);
        let probes = [
            residual(center - 2.0 * delta),
            residual(center - delta),
            residual(center + delta),
            residual(center + 2.0 * delta),
        ];
        if probes.iter().any(|&v| v <= tol) {
            // Another root interferes with the decay probes; keep the
            // candidate rather than sharpen with a corrupted order.
            return best;
        }
        let decay = ((probes[1] / probes[0]) * (probes[2] / probes[3])).sqrt();
        let order = (-decay.ln() / std::f64::consts::LN_2)
            .round()
            .clamp(1.0, self.degree() as f64) as usize;
        if order == 1 {
            return best;
        }
        let sharpened = golden_min(
            |t| {
                self.eval_derivative(Complex64::from_polar(1.0, t), order - 1)
                    .norm_sqr()
            },
            center - half_width - 1e-4,
            center + half_width + 1e-4,
        );
        if residual(sharpened) <= tol {
            sharpened
        } else {
            best
        }
    }

    /// Boundary of the sub-`tol` modulus plateau around `from`, walking in
    /// `direction` and bisecting the crossing.
    fn plateau_edge(&self, from: f64, direction: f64, tol: f64) -> f64 {
        let step = 1e-5;
        let mut inside = from;
        for _ in 0..20_000 {
            let next = inside + direction * step;
            if self.eval_circle(next).norm() <= tol {
                inside = next;
                continue;
            }
            let (mut a, mut b) = (inside, next);
            for _ in 0..30 {
                let mid = 0.5 * (a + b);
                if self.eval_circle(mid).norm() <= tol {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        inside
    }

    /// Smallest modulus the polynomial attains on the unit circle.
    ///
    /// Scans `grid_points` angles and golden-polishes every local minimum,
    /// making this a slow but solver-independent presence check for
    /// unit-circle roots.
    pub fn min_modulus_on_circle(&self, grid_points: usize) -> f64 {
        let n = grid_points.max(16);
        let spacing = TAU / n as f64;
        let g: Vec<f64> = (0..n)
            .map(|j| self.eval_circle(spacing * j as f64).norm_sqr())
            .collect();
        let mut best = f64::INFINITY;
        for j in 0..n {
            best = best.min(g[j]);
            let prev = g[(j + n - 1) % n];
            let next = g[(j + 1) % n];
            if g[j] <= prev && g[j] <= next {
                let center = spacing * j as f64;
                let refined = golden_min(
                    |t| self.eval_circle(t).norm_sqr(),
                    center - spacing,
                    center + spacing,
                );
                best = best.min(self.eval_circle(refined).norm_sqr());
            }
        }
        best.sqrt()
    }
}

/// Real rotated amplitude of a symmetric-coefficient polynomial.
///
/// Pairing `p_k` with `p_{d-k}` turns `exp(-i d t / 2) P(exp(i t))` into
/// the real cosine series `sum_k p_k cos((k - d/2) t)`, equal in magnitude
/// to the circle modulus, whose sign changes expose roots to bisection.
struct RotatedAmplitude {
    weights: Vec<f64>,
}

impl RotatedAmplitude {
    /// Symmetrizes the coefficients (rounding-level asymmetry averages out).
    fn new(coeffs: &[f64]) -> Self {
        let d = coeffs.len() - 1;
        let weights = (0..=d).map(|k| 0.5 * (coeffs[k] + coeffs[d - k])).collect();
        Self { weights }
    }

    fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Harmonic frequency `k - d/2` of the `k`-th term.
    fn frequency(&self, k: usize) -> f64 {
        k as f64 - 0.5 * (self.weights.len() - 1) as f64
    }

    /// Amplitude value at angle `theta`.
    fn value(&self, theta: f64) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(k, &w)| w * (self.frequency(k) * theta).cos())
            .sum()
    }

    /// `order`-th derivative at `theta` (each term shifts by `pi / 2`).
    fn derivative(&self, theta: f64, order: usize) -> f64 {
        let shift = order as f64 * FRAC_PI_2;
        self.weights
            .iter()
            .enumerate()
            .map(|(k, &w)| {
                let omega = self.frequency(k);
                w * omega.powi(order as i32) * (omega * theta + shift).cos()
            })
            .sum()
    }

    /// Coefficient scale of the `order`-th derivative, for firmness tests.
    fn scale(&self, order: usize) -> f64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(k, &w)| w.abs() * self.frequency(k).abs().powi(order as i32))
            .sum()
    }
}

/// Synthetic division by `(1 + z)` in place (ascending coefficients),
/// returning the remainder, which equals the value at `z = -1`.
fn divide_out_minus_one(coeffs: &mut Vec<f64>) -> f64 {
    let n = coeffs.len() - 1;
    let mut quotient = vec![0.0; n];
    quotient[n - 1] = coeffs[n];
    for k in (1..n).rev() {
        quotient[k - 1] = coeffs[k] - quotient[k];
    }
    let remainder = coeffs[0] - quotient[0];
    *coeffs = quotient;
    remainder
}

/// Unit-circle root angles of a symmetric coefficient list of degree at
/// most four, in closed form.
///
/// Odd degrees carry an exact `(1 + z)` factor (symmetric pairing makes
/// the value at `z = -1` cancel term by term); even degrees reduce to a
/// polynomial of half the degree in `u = z + 1/z = 2 cos(t)`.
fn palindromic_factor_angles(mut coeffs: Vec<f64>) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0_f64, |m, &c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    while coeffs.len() > 2 && coeffs.last().expect("nonempty").abs() <= 1e-12 * scale {
        coeffs.pop();
        coeffs.remove(0);
    }
    match coeffs.len() {
        0 | 1 => Vec::new(),
        len if len % 2 == 0 => {
            let mut reduced = coeffs;
            divide_out_minus_one(&mut reduced);
            let mut angles = palindromic_factor_angles(reduced);
            angles.push(PI);
            angles
        }
        3 => circle_pair_angles(-coeffs[1] / (2.0 * coeffs[2])),
        5 => {
            // a u^2 + b u + c with u = 2 cos(t).
            let a = coeffs[4];
            let b = coeffs[3];
            let c = coeffs[2] - 2.0 * coeffs[4];
            let disc = b * b - 4.0 * a * c;
            if disc < 0.0 || a == 0.0 {
                return Vec::new();
            }
            let sq = disc.sqrt();
            let mut angles = circle_pair_angles((-b + sq) / (4.0 * a));
            angles.extend(circle_pair_angles((-b - sq) / (4.0 * a)));
            angles
        }
        _ => Vec::new(),
    }
}

/// Conjugate pair of circle angles for a root with the given cosine.
fn circle_pair_angles(cos_theta: f64) -> Vec<f64> {
    if !cos_theta.is_finite() || cos_theta.abs() > 1.0 + 1e-9 {
        return Vec::new();
    }
    let theta = cos_theta.clamp(-1.0, 1.0).acos();
    if theta <= 0.0 {
        Vec::new()
    } else if (theta - PI).abs() <= ANGLE_DEDUP {
        vec![PI]
    } else {
        vec![theta, TAU - theta]
    }
}

/// Bisects a sign change of `f` between `lo` and `hi` down to an interval
/// of `1e-15`; the endpoint values must differ in sign.
fn bisect_sign_change(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Compensated double-word value `hi + lo` for evaluations whose terms
/// cancel to far below one rounding unit of the inputs.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    /// Renormalizes a head/tail pair into non-overlapping words.
    fn renorm(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd { hi: s, lo: lo - (s - hi) }
    }

    /// Error-free two-sum of the heads, folding in both tails.
    fn add(self, other: Dd) -> Dd {
        let s = self.hi + other.hi;
        let shifted = s - self.hi;
        let err =
            (self.hi - (s - shifted)) + (other.hi - shifted) + self.lo + other.lo;
        Dd::renorm(s, err)
    }

    fn sub(self, other: Dd) -> Dd {
        self.add(Dd { hi: -other.hi, lo: -other.lo })
    }

    fn add_f64(self, x: f64) -> Dd {
        self.add(Dd { hi: x, lo: 0.0 })
    }

    /// Product with the head rounding error recovered by fused multiply-add.
    fn mul(self, other: Dd) -> Dd {
        let p = self.hi * other.hi;
        let err = self.hi.mul_add(other.hi, -p) + self.hi * other.lo + self.lo * other.hi;
        Dd::renorm(p, err)
    }

    fn scale(self, factor: f64) -> Dd {
        let p = self.hi * factor;
        let err = self.hi.mul_add(factor, -p) + self.lo * factor;
        Dd::renorm(p, err)
    }
}

/// Smallest unit-circle root angle, absent when the polynomial never
/// vanishes on the circle. Real coefficients pair roots as `exp(±i theta)`,
/// so a present angle always lies in `(0, pi]`.
pub fn first_orthogonality_angle(poly: &UnitCirclePolynomial) -> Option<f64> {
    poly.unit_circle_roots(CIRCLE_TOL).into_iter().next()
}

/// Maps an angle to the canonical range `(0, 2*pi]`.
pub(crate) fn canonical_angle(theta: f64) -> f64 {
    let wrapped = theta.rem_euclid(TAU);
    if wrapped == 0.0 {
        TAU
    } else {
        wrapped
    }
}

/// Golden-section minimizer on `[lo, hi]`, shrinking to width `1e-13`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-13 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
