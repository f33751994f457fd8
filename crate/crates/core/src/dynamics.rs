//! The amplifier generator and its flow.
//!
//! On each rotation orbit the driven dynamics is the unitary flow that
//! advances the orbit one position per unit time: `U(1)` sends the basis
//! state at orbit position `j` to position `j + 1 (mod L)`. Writing `S` for
//! the cyclic shift on an orbit of length `L`, the flow is `U(t) = S^t`
//! defined through the discrete Fourier transform: with
//! `F[m, k] = e^{−2πimk/L}/√L`,
//!
//! ```text
//! U(t) = F · diag(e^{2πikt/L}, k = 0 … L−1) · F*
//! ```
//!
//! which at integer `t` is exactly the shift power and interpolates
//! unitarily in between. The generator branch is fixed by taking the
//! eigenvalue on Fourier mode `k` to be `2πik/L` with `k` running over
//! `0 … L−1` (not symmetrised around zero); this makes the amplifier matrix
//! `A = (h/2π)·log U(1)` have diagonal entries `ih(L−1)/(2L) → ih/2` and
//! off-diagonal magnitudes `≈ h/(2π·distance)` — a long-range hopping that
//! no local perturbation can mimic. [`ming_entry`] evaluates `A` in closed
//! form; the dense module cross-checks it against a literal matrix
//! exponential at small sizes.
//!
//! Planck's constant enters `A` through [`PhysicalScale`] (`h(n) = h0/n`,
//! shrinking with the register so the orbit period stays `O(n)` in fixed
//! units), but the flow itself — built directly from the Fourier phases —
//! never reads `h`: trajectories are bitwise identical for every `h0`.
//!
//! The combined particle ⊗ register space is a direct sum of the two
//! particle branches. [`MingDynamics::evolve`] drives the register on the
//! `ψ1` (detected) branch and leaves the `ψ0` branch stationary, up to an
//! optional global phase rate on the idle branch that exists purely so the
//! test suite can verify it is observationally inert.

use crate::basis::BasisIndex;
use crate::orbit::{orbit_of, Orbit};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;
use thiserror::Error;

/// Errors from dynamics construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    /// `h0` must be a positive finite number.
    #[error("physical scale h0 = {0} is not positive and finite")]
    NonPositiveScale(f64),
    /// Particle amplitudes must have unit norm (within 1e−9).
    #[error("particle amplitudes have norm {norm}, expected 1 within 1e-9")]
    NotNormalized {
        /// The offending norm.
        norm: f64,
    },
    /// Detection probability must lie in `[0, 1]`.
    #[error("detection probability {0} lies outside [0, 1]")]
    InvalidProbability(f64),
    /// Branches of a combined state must share the register width.
    #[error("register width mismatch: {left} vs {right}")]
    WidthMismatch {
        /// Width of the first operand.
        left: usize,
        /// Width of the second operand.
        right: usize,
    },
}

/// Planck's constant for the width-`n` amplifier: `h(n) = h0 / n`.
///
/// The rescaling keeps the amplification time comparable across widths; all
/// observable statistics produced by this crate are independent of `h0`
/// (and the flow is bitwise so).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScale {
    h0: f64,
}

impl PhysicalScale {
    /// A scale with base constant `h0 > 0`.
    pub fn new(h0: f64) -> Result<Self, DynamicsError> {
        if !(h0.is_finite() && h0 > 0.0) {
            return Err(DynamicsError::NonPositiveScale(h0));
        }
        Ok(Self { h0 })
    }

    /// The base constant.
    pub fn h0(&self) -> f64 {
        self.h0
    }

    /// The width-dependent constant `h(n) = h0 / n`.
    pub fn h(&self, n: usize) -> f64 {
        self.h0 / n as f64
    }
}

impl Default for PhysicalScale {
    /// Natural units: `h0 = 1`.
    fn default() -> Self {
        Self { h0: 1.0 }
    }
}

/// Entry `(row, col)` of the width-`n` amplifier block `A`, the generator
/// with `e^{(2π/h)A} = ` one orbit step.
///
/// Closed form (ω = e^{−2πi(row−col)/n}):
///
/// ```text
/// A[r, r] = i·h·(n−1)/(2n)                      (→ ih/2 as n → ∞)
/// A[r, c] = (i·h/n) / (ω − 1)      for r ≠ c,   |A[r, c]| = h / (2n·sin(π|r−c|/n))
/// ```
///
/// so well-separated entries fall off as `h/(2π|r−c|)`. The matrix is
/// exactly skew-hermitian. Row and column index orbit *positions*
/// (offsets along the cycle), not raw basis values.
///
/// # Panics
///
/// If `row` or `col` is not below `n`.
pub fn ming_entry(row: usize, col: usize, n: usize, scale: PhysicalScale) -> Complex64 {
    assert!(row < n && col < n, "orbit positions must lie below n = {n}");
    let h = scale.h(n);
    let nf = n as f64;
    if row == col {
        return Complex64::new(0.0, h * (nf - 1.0) / (2.0 * nf));
    }
    let delta = row as f64 - col as f64;
    let omega = Complex64::from_polar(1.0, -2.0 * PI * delta / nf);
    Complex64::new(0.0, h / nf) / (omega - Complex64::new(1.0, 0.0))
}

/// The flow on a single orbit of length `L`: FFT plans plus the Fourier
/// phase recipe. Construction plans the transforms once; evolving is then
/// `O(L log L)` per time point (`O(L²)`-free even at prime lengths).
pub struct MingBlock {
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl MingBlock {
    /// Plans the flow for orbits of length `len ≥ 1`.
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            len,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        }
    }

    /// Orbit length this block acts on.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; blocks act on at least one position.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Generator entry at orbit positions `(row, col)`; see [`ming_entry`].
    pub fn entry(&self, row: usize, col: usize, scale: PhysicalScale) -> Complex64 {
        ming_entry(row, col, self.len, scale)
    }

    /// The (unnormalised) Fourier coefficients of an amplitude vector.
    ///
    /// Computing this once and reusing it across many time points via
    /// [`Self::evolve_spectrum`] turns a trajectory sweep into one FFT per
    /// time point instead of two.
    pub fn analyze(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.len, "amplitude count must match orbit length");
        let mut buf = amps.to_vec();
        self.inverse.process(&mut buf);
        buf
    }

    /// Applies `U(t)` to a vector given by its [`Self::analyze`] spectrum.
    pub fn evolve_spectrum(&self, spectrum: &[Complex64], t: f64) -> Vec<Complex64> {
        assert_eq!(spectrum.len(), self.len, "spectrum length must match orbit length");
        let lf = self.len as f64;
        let mut buf: Vec<Complex64> = spectrum
            .iter()
            .enumerate()
            .map(|(k, s)| s * Complex64::from_polar(1.0 / lf, 2.0 * PI * k as f64 * t / lf))
            .collect();
        self.forward.process(&mut buf);
        buf
    }

    /// Applies `U(t)` to an orbit amplitude vector.
    pub fn evolve(&self, amps: &[Complex64], t: f64) -> Vec<Complex64> {
        self.evolve_spectrum(&self.analyze(amps), t)
    }
}

/// Evolves one orbit amplitude vector for time `t` (`amps[j]` sits at orbit
/// position `j`). Convenience wrapper that plans and discards a
/// [`MingBlock`]; loops over time points should hold their own block.
pub fn evolve_orbit(amps: &[Complex64], t: f64) -> Vec<Complex64> {
    MingBlock::new(amps.len()).evolve(amps, t)
}

/// Unit-norm amplitudes `(a0, a1)` of the two-level particle: `a1` weights
/// the detected branch, `|a1|²` is the detection probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleAmplitudes {
    a0: Complex64,
    a1: Complex64,
}

impl ParticleAmplitudes {
    /// Wraps amplitudes, requiring unit norm within 1e−9.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self, DynamicsError> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !((norm - 1.0).abs() <= 1e-9) {
            return Err(DynamicsError::NotNormalized { norm });
        }
        Ok(Self { a0, a1 })
    }

    /// Real amplitudes from a detection probability: `a0 = √(1−p1)`,
    /// `a1 = √p1 · e^{i·phase}`.
    pub fn from_detection_probability(p1: f64, phase: f64) -> Result<Self, DynamicsError> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(DynamicsError::InvalidProbability(p1));
        }
        Ok(Self {
            a0: Complex64::new((1.0 - p1).sqrt(), 0.0),
            a1: Complex64::from_polar(p1.sqrt(), phase),
        })
    }

    /// Amplitude on the undetected branch.
    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    /// Amplitude on the detected branch.
    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    /// `|a0|²`.
    pub fn p0(&self) -> f64 {
        self.a0.norm_sqr()
    }

    /// `|a1|²`, the detection probability.
    pub fn p1(&self) -> f64 {
        self.a1.norm_sqr()
    }
}

/// Amplitudes supported on a single orbit: `amps[j]` multiplies the basis
/// state at orbit position `j` (i.e. `orbit.members()[j]`).
#[derive(Debug, Clone)]
pub struct OrbitAmplitudes {
    orbit: Arc<Orbit>,
    amps: Vec<Complex64>,
}

impl OrbitAmplitudes {
    /// Attaches an amplitude vector to an orbit; lengths must match.
    pub fn new(orbit: Arc<Orbit>, amps: Vec<Complex64>) -> Result<Self, DynamicsError> {
        if orbit.len() != amps.len() {
            return Err(DynamicsError::WidthMismatch {
                left: orbit.len(),
                right: amps.len(),
            });
        }
        Ok(Self { orbit, amps })
    }

    /// The supporting orbit.
    pub fn orbit(&self) -> &Arc<Orbit> {
        &self.orbit
    }

    /// Amplitudes in orbit-position order.
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }
}

/// A register state decomposed over rotation orbits plus the two fixed
/// points. Orbits not listed carry zero amplitude.
#[derive(Debug, Clone)]
pub struct BranchState {
    n: usize,
    orbits: Vec<OrbitAmplitudes>,
    /// Amplitudes on the fixed points `0` and `2^n − 1`, in that order.
    fixed: [Complex64; 2],
}

impl BranchState {
    /// The zero state of the width-`n` register (useful as a building
    /// block; combined states themselves must end up normalised).
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            orbits: Vec::new(),
            fixed: [Complex64::new(0.0, 0.0); 2],
        }
    }

    /// The basis state `|i⟩` as a branch state (fixed points included).
    pub fn basis_vector(i: &BasisIndex) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut state = Self::zero(i.n());
        if i.is_fixed_point() {
            let slot = usize::from(i.popcount() != 0);
            state.fixed[slot] = one;
        } else {
            let orbit = orbit_of(i).expect("non-fixed index generates an orbit");
            let pos = orbit.position_of(i).expect("index lies on its own orbit");
            let mut amps = vec![Complex64::new(0.0, 0.0); orbit.len()];
            amps[pos] = one;
            state.orbits.push(OrbitAmplitudes {
                orbit: Arc::new(orbit),
                amps,
            });
        }
        state
    }

    /// A state supported on one orbit with the given amplitudes.
    pub fn from_orbit(orbit: Arc<Orbit>, amps: Vec<Complex64>) -> Result<Self, DynamicsError> {
        let n = orbit.n();
        Ok(Self {
            n,
            orbits: vec![OrbitAmplitudes::new(orbit, amps)?],
            fixed: [Complex64::new(0.0, 0.0); 2],
        })
    }

    /// Register width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Orbit components with nonzero support.
    pub fn orbits(&self) -> &[OrbitAmplitudes] {
        &self.orbits
    }

    /// Amplitudes on the fixed points `0` and `2^n − 1`.
    pub fn fixed(&self) -> [Complex64; 2] {
        self.fixed
    }

    /// Squared norm of the branch vector.
    pub fn norm_sqr(&self) -> f64 {
        let orbit_mass: f64 = self
            .orbits
            .iter()
            .flat_map(|oa| oa.amps.iter())
            .map(|a| a.norm_sqr())
            .sum();
        orbit_mass + self.fixed[0].norm_sqr() + self.fixed[1].norm_sqr()
    }

    /// Amplitude carried by the basis state `|i⟩`.
    pub fn amplitude(&self, i: &BasisIndex) -> Complex64 {
        if i.is_fixed_point() {
            return self.fixed[usize::from(i.popcount() != 0)];
        }
        for oa in &self.orbits {
            if let Some(pos) = oa.orbit.position_of(i) {
                return oa.amps[pos];
            }
        }
        Complex64::new(0.0, 0.0)
    }

    /// Multiplies the whole branch vector by a scalar.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n: self.n,
            orbits: self
                .orbits
                .iter()
                .map(|oa| OrbitAmplitudes {
                    orbit: Arc::clone(&oa.orbit),
                    amps: oa.amps.iter().map(|a| a * factor).collect(),
                })
                .collect(),
            fixed: [self.fixed[0] * factor, self.fixed[1] * factor],
        }
    }
}

/// The state of particle ⊗ register, kept as the two particle branches:
/// `Ψ = a0·ψ0⊗(idle vector) + a1·ψ1⊗(driven vector)`.
///
/// Branch vectors are stored separately from the particle amplitudes so
/// that the detection probabilities `|a0|², |a1|²` remain manifest while
/// the register parts evolve.
#[derive(Debug, Clone)]
pub struct CombinedState {
    n: usize,
    particle: ParticleAmplitudes,
    idle: BranchState,
    driven: BranchState,
}

impl CombinedState {
    /// `particle ⊗ |apparatus⟩`: both branches start in the same register
    /// basis state (the usual pre-measurement configuration, with
    /// `apparatus` a cocked pattern).
    pub fn product(particle: ParticleAmplitudes, apparatus: &BasisIndex) -> Self {
        let register = BranchState::basis_vector(apparatus);
        Self {
            n: apparatus.n(),
            particle,
            idle: register.clone(),
            driven: register,
        }
    }

    /// General two-branch state with explicit register vectors.
    pub fn from_branches(
        particle: ParticleAmplitudes,
        idle: BranchState,
        driven: BranchState,
    ) -> Result<Self, DynamicsError> {
        if idle.n() != driven.n() {
            return Err(DynamicsError::WidthMismatch {
                left: idle.n(),
                right: driven.n(),
            });
        }
        Ok(Self {
            n: idle.n(),
            particle,
            idle,
            driven,
        })
    }

    /// Register width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Particle amplitudes.
    pub fn particle(&self) -> ParticleAmplitudes {
        self.particle
    }

    /// Register vector on the undetected (`ψ0`) branch.
    pub fn idle(&self) -> &BranchState {
        &self.idle
    }

    /// Register vector on the detected (`ψ1`) branch.
    pub fn driven(&self) -> &BranchState {
        &self.driven
    }

    /// Norm of the combined vector.
    pub fn norm(&self) -> f64 {
        (self.particle.p0() * self.idle.norm_sqr() + self.particle.p1() * self.driven.norm_sqr())
            .sqrt()
    }

    /// Combined amplitude on `ψε ⊗ |i⟩` for `ε ∈ {0, 1}`.
    pub fn amplitude(&self, particle_branch: u8, i: &BasisIndex) -> Complex64 {
        match particle_branch {
            0 => self.particle.a0 * self.idle.amplitude(i),
            1 => self.particle.a1 * self.driven.amplitude(i),
            _ => panic!("particle branch must be 0 or 1"),
        }
    }
}

/// The branch-conditional amplifier flow: the register is driven only when
/// the particle took the detected branch.
#[derive(Debug, Clone)]
pub struct MingDynamics {
    scale: PhysicalScale,
    idle_phase_rate: f64,
}

impl MingDynamics {
    /// Flow with the given physical scale and a stationary idle branch.
    pub fn new(scale: PhysicalScale) -> Self {
        Self {
            scale,
            idle_phase_rate: 0.0,
        }
    }

    /// Lets the idle branch rotate by the global phase `e^{i·rate·t}`
    /// instead of holding exactly still. All pointer statistics are
    /// invariant under this — the test suite checks it — so the default
    /// rate is 0.
    pub fn with_idle_phase_rate(mut self, rate: f64) -> Self {
        self.idle_phase_rate = rate;
        self
    }

    /// The physical scale in force.
    pub fn scale(&self) -> PhysicalScale {
        self.scale
    }

    /// Idle-branch phase rate (0 unless configured).
    pub fn idle_phase_rate(&self) -> f64 {
        self.idle_phase_rate
    }

    /// Generator entry for the width-`n` amplifier under this scale.
    pub fn entry(&self, row: usize, col: usize, n: usize) -> Complex64 {
        ming_entry(row, col, n, self.scale)
    }

    /// Evolves a combined state for time `t`: driven-branch orbits advance
    /// under the orbit flow, fixed points and the idle branch stay put (the
    /// idle branch up to the configured global phase). Unitary on each
    /// branch, so the norm and the particle weights are conserved.
    pub fn evolve(&self, state: &CombinedState, t: f64) -> CombinedState {
        // One block per distinct orbit length; states usually touch one.
        let mut blocks: HashMap<usize, MingBlock> = HashMap::new();
        let driven_orbits = state
            .driven
            .orbits
            .iter()
            .map(|oa| {
                let block = blocks
                    .entry(oa.orbit.len())
                    .or_insert_with(|| MingBlock::new(oa.orbit.len()));
                OrbitAmplitudes {
                    orbit: Arc::clone(&oa.orbit),
                    amps: block.evolve(&oa.amps, t),
                }
            })
            .collect();
        let driven = BranchState {
            n: state.driven.n,
            orbits: driven_orbits,
            fixed: state.driven.fixed,
        };
        let idle = if self.idle_phase_rate == 0.0 {
            state.idle.clone()
        } else {
            state
                .idle
                .scaled(Complex64::from_polar(1.0, self.idle_phase_rate * t))
        };
        CombinedState {
            n: state.n,
            particle: state.particle,
            idle,
            driven,
        }
    }
}

impl Default for MingDynamics {
    fn default() -> Self {
        Self::new(PhysicalScale::default())
    }
}

/// Evolves a combined state under the default flow (unit scale, stationary
/// idle branch).
pub fn evolve_combined(state: &CombinedState, t: f64) -> CombinedState {
    MingDynamics::default().evolve(state, t)
}
