//! The pointer observable and its infinite-time averages.
//!
//! A width-`n` register is *cocked* — ready to fire — when its digit string
//! is close to the canonical ready pattern: ones on the low half `[0, ⌈n/2⌉)`
//! and zeros on the high half. "Close" means the number of defects (sites
//! disagreeing with the pattern) stays within a budget that grows sublinearly
//! with `n`, so the cocked set is a vanishing fraction of each orbit while
//! still absorbing microscopic fuzz.
//!
//! The pointer observable is `g = 1 − (state mass inside the cocked set)`:
//! it reads 0 on a ready apparatus and 1 once the register has been driven
//! away. Its time average along the flow started from a cocked pattern has
//! a closed form: the driven branch spends `1/L` of its time at each of the
//! `L` positions of the orbit, of which `s` are cocked, while the idle
//! branch never leaves; hence
//!
//! ```text
//! ⟨g⟩ = |a1|² · (1 − s/L)  →  |a1|²   as n → ∞  (s/L → 0),
//! ```
//!
//! the detection probability. [`time_average_spectral`] evaluates the
//! closed form exactly; [`time_average_quadrature`] integrates the
//! trajectory numerically (trapezoid over one period, which is *exact* once
//! the step count clears the bandwidth bound `2n + 1`, the integrand being
//! a trigonometric polynomial). The two agreeing is a genuine cross-check:
//! they share no code path beyond the flow itself.
//!
//! The convergence is specific to the mass observable's *values*, not to
//! "some macroscopic reading": [`PointerFamily::ManifoldIndicator`] is a
//! second observable with the same classical endpoints whose time average
//! goes to 1 regardless of `|a1|²` — time averaging alone does not single
//! out the Born weights, and the suite keeps that counterexample visible.

use crate::basis::BasisIndex;
use crate::dynamics::{
    CombinedState, DynamicsError, MingBlock, OrbitAmplitudes, ParticleAmplitudes,
};
use crate::orbit::{orbit_of, Orbit, OrbitError};
use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// A state counts as "inside the cocked manifold" for the indicator
/// observable when its cocked mass is at least `1 − INDICATOR_TOLERANCE`.
pub const INDICATOR_TOLERANCE: f64 = 1e-9;

/// Errors from pointer statistics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointerError {
    /// Register width 0 admits no pointer.
    #[error("register width must be at least 1")]
    ZeroWidth,
    /// Combined states fed to the pointer must be normalised.
    #[error("state norm {norm} deviates from 1 beyond 1e-9")]
    NotNormalized {
        /// The offending norm.
        norm: f64,
    },
    /// State and configuration disagree about the register width.
    #[error("state width {state} does not match configuration width {config}")]
    WidthMismatch {
        /// Width of the state.
        state: usize,
        /// Width in the pointer configuration.
        config: usize,
    },
    /// Too few quadrature steps to integrate the trajectory exactly.
    #[error("{steps} quadrature steps cannot resolve the trajectory; need at least {minimum}")]
    QuadratureUnderresolved {
        /// Requested step count.
        steps: usize,
        /// Minimum admissible step count (`2n + 1`).
        minimum: usize,
    },
    /// Budget exponent must lie strictly between 0 and 1.
    #[error("budget exponent {0} lies outside (0, 1)")]
    InvalidExponent(f64),
    /// A prefix passed to the macroscopic check must fit inside the low
    /// (all-ones) half of the ready pattern.
    #[error("prefix covers {sites} sites but the low half has only {half}")]
    PrefixTooWide {
        /// Sites covered by the prefix.
        sites: usize,
        /// Low-half width of the smallest register in the grid.
        half: usize,
    },
    /// A prefix over `m` sites needs exactly `2^m` amplitudes.
    #[error("prefix needs {expected} amplitudes, got {found}")]
    PrefixShape {
        /// Required amplitude count (`2^sites`).
        expected: usize,
        /// Provided amplitude count.
        found: usize,
    },
    /// Underlying orbit failure (fixed-point start and friends).
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    /// Underlying state-construction failure.
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// How the defect budget grows with the register width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetRule {
    /// No defects tolerated: the cocked set is the ready pattern alone.
    Zero,
    /// `⌊√n⌋` defects — the default; sublinear, so `s/n → 0`.
    Sqrt,
    /// `⌊n^γ⌋` defects for a fixed exponent `γ ∈ (0, 1)`.
    Power(f64),
}

impl BudgetRule {
    /// The defect budget at width `n`.
    pub fn budget(&self, n: usize) -> Result<u64, PointerError> {
        match *self {
            BudgetRule::Zero => Ok(0),
            BudgetRule::Sqrt => Ok(n.isqrt() as u64),
            BudgetRule::Power(gamma) => {
                if !(gamma.is_finite() && 0.0 < gamma && gamma < 1.0) {
                    return Err(PointerError::InvalidExponent(gamma));
                }
                Ok((n as f64).powf(gamma).floor() as u64)
            }
        }
    }
}

/// Width, half split, and resolved defect budget of the pointer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointerConfig {
    n: usize,
    half: usize,
    budget: u64,
}

impl PointerConfig {
    /// Configuration at width `n` under a budget rule.
    pub fn new(n: usize, rule: BudgetRule) -> Result<Self, PointerError> {
        if n == 0 {
            return Err(PointerError::ZeroWidth);
        }
        Ok(Self {
            n,
            half: n.div_ceil(2),
            budget: rule.budget(n)?,
        })
    }

    /// Configuration with an explicit budget (escape hatch for experiments).
    pub fn with_budget(n: usize, budget: u64) -> Result<Self, PointerError> {
        if n == 0 {
            return Err(PointerError::ZeroWidth);
        }
        Ok(Self {
            n,
            half: n.div_ceil(2),
            budget,
        })
    }

    /// Register width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The split index `⌈n/2⌉`: sites below it want digit 1, the rest 0.
    pub fn half(&self) -> usize {
        self.half
    }

    /// Tolerated defect count.
    pub fn budget(&self) -> u64 {
        self.budget
    }
}

/// Number of sites of `i` that disagree with the ready pattern
/// (ones on `[0, half)`, zeros on `[half, n)`).
pub fn defect_count(i: &BasisIndex, config: &PointerConfig) -> u64 {
    CockedSet::new(*config).defect(i)
}

/// The cocked set: basis states within the defect budget of the ready
/// pattern. Holds the low-half mask so membership tests on wide registers
/// stay `O(n / 64)`.
#[derive(Debug, Clone)]
pub struct CockedSet {
    config: PointerConfig,
    low_mask: BigUint,
}

impl CockedSet {
    /// The cocked set for a pointer configuration.
    pub fn new(config: PointerConfig) -> Self {
        let low_mask = (BigUint::one() << config.half) - BigUint::one();
        Self { config, low_mask }
    }

    /// The configuration in force.
    pub fn config(&self) -> &PointerConfig {
        &self.config
    }

    /// The ready pattern itself: ones exactly on the low half, i.e. the
    /// value `2^⌈n/2⌉ − 1`. It is the minimal member of its orbit, hence
    /// also that orbit's canonical representative.
    pub fn canonical(&self) -> BasisIndex {
        BasisIndex::new(self.config.n, self.low_mask.clone())
            .expect("ready pattern fits the register width")
    }

    /// Defect count of `i` against the ready pattern: with `u` ones in the
    /// low half and `p` ones in total, `half − u` low sites are missing
    /// their 1 and `p − u` high sites carry a spurious one.
    pub fn defect(&self, i: &BasisIndex) -> u64 {
        debug_assert_eq!(i.n(), self.config.n);
        let low_ones = (i.value() & &self.low_mask).count_ones();
        self.config.half as u64 + i.popcount() - 2 * low_ones
    }

    /// Whether `i` lies within the defect budget.
    pub fn contains(&self, i: &BasisIndex) -> bool {
        self.defect(i) <= self.config.budget
    }

    /// Membership flags along an orbit, in member order.
    pub fn membership_profile(&self, orbit: &Orbit) -> Vec<bool> {
        orbit.members().iter().map(|m| self.contains(m)).collect()
    }
}

/// The two pointer observables sharing the classical endpoints {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointerFamily {
    /// `g = 1 − (cocked mass)`: the observable whose time averages converge
    /// to the detection probability.
    MassDeficit,
    /// `g = 0` if the cocked mass is ≥ `1 − 1e−9`, else `1`: agrees with
    /// `MassDeficit` on the classical endpoints but time-averages to 1
    /// regardless of the particle amplitudes — the non-uniqueness
    /// counterexample.
    ManifoldIndicator,
}

impl PointerFamily {
    /// The observable value at a given cocked mass.
    pub fn evaluate(&self, cocked_mass: f64) -> f64 {
        match self {
            PointerFamily::MassDeficit => 1.0 - cocked_mass,
            PointerFamily::ManifoldIndicator => {
                if cocked_mass >= 1.0 - INDICATOR_TOLERANCE {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }
}

/// Cocked mass of a combined state: `|a0|²·(idle mass in C) + |a1|²·(driven
/// mass in C)`.
fn cocked_mass(state: &CombinedState, cocked: &CockedSet) -> f64 {
    let branch_mass = |branch: &crate::dynamics::BranchState| -> f64 {
        let mut mass = 0.0;
        for oa in branch.orbits() {
            let flags = cocked.membership_profile(oa.orbit());
            mass += masked_mass(oa.amps(), &flags);
        }
        let n = branch.n();
        let [amp_zero, amp_ones] = branch.fixed();
        if cocked.contains(&BasisIndex::zero(n)) {
            mass += amp_zero.norm_sqr();
        }
        if cocked.contains(&BasisIndex::all_ones(n)) {
            mass += amp_ones.norm_sqr();
        }
        mass
    };
    let particle = state.particle();
    particle.p0() * branch_mass(state.idle()) + particle.p1() * branch_mass(state.driven())
}

fn masked_mass(amps: &[num_complex::Complex64], flags: &[bool]) -> f64 {
    amps.iter()
        .zip(flags)
        .filter(|(_, &f)| f)
        .map(|(a, _)| a.norm_sqr())
        .sum()
}

/// The pointer reading `g(Ψ) = 1 − (cocked mass of Ψ)` of a normalised
/// combined state. Values sit in `[0, 1]` up to round-off (a reading of
/// `−1e−16` on a perfectly cocked state is normal).
pub fn pointer_value(state: &CombinedState, cocked: &CockedSet) -> Result<f64, PointerError> {
    if state.n() != cocked.config().n() {
        return Err(PointerError::WidthMismatch {
            state: state.n(),
            config: cocked.config().n(),
        });
    }
    let norm = state.norm();
    if !((norm - 1.0).abs() <= 1e-9) {
        return Err(PointerError::NotNormalized { norm });
    }
    Ok(PointerFamily::MassDeficit.evaluate(cocked_mass(state, cocked)))
}

/// How a time average was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AverageMethod {
    /// Closed form from the flow's spectral decomposition.
    Spectral,
    /// Trapezoid quadrature of the trajectory over one period.
    Quadrature,
}

/// An infinite-time average of the pointer along the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeAverageResult {
    /// Register width.
    pub n: usize,
    /// Length of the starting orbit (`n` whenever `n` is prime).
    pub orbit_len: usize,
    /// Cocked members on the starting orbit.
    pub s: u64,
    /// How the average was computed.
    pub method: AverageMethod,
    /// The time average `⟨g⟩`.
    pub value: f64,
    /// The detection probability `|a1|²` it converges to.
    pub detection_probability: f64,
    /// `|value − |a1|²|`; for the spectral route this is `|a1|²·s/L` by
    /// construction, bit for bit.
    pub residual: f64,
}

impl TimeAverageResult {
    /// The vanishing fraction `s / L`.
    pub fn s_over_n(&self) -> f64 {
        self.s as f64 / self.orbit_len as f64
    }
}

/// Closed-form time average started from the canonical ready pattern.
pub fn time_average_spectral(
    particle: ParticleAmplitudes,
    config: &PointerConfig,
) -> Result<TimeAverageResult, PointerError> {
    let cocked = CockedSet::new(*config);
    time_average_spectral_from(particle, config, &cocked.canonical())
}

/// Closed-form time average started from an arbitrary basis state: the
/// driven branch visits each of the `L` orbit positions with occupancy
/// `1/L`, the idle branch stays at `start`.
pub fn time_average_spectral_from(
    particle: ParticleAmplitudes,
    config: &PointerConfig,
    start: &BasisIndex,
) -> Result<TimeAverageResult, PointerError> {
    if start.n() != config.n() {
        return Err(PointerError::WidthMismatch {
            state: start.n(),
            config: config.n(),
        });
    }
    let cocked = CockedSet::new(*config);
    let orbit = orbit_of(start)?;
    let s = cocked
        .membership_profile(&orbit)
        .iter()
        .filter(|&&f| f)
        .count() as u64;
    let ratio = s as f64 / orbit.len() as f64;
    let p1 = particle.p1();
    let (value, residual) = if cocked.contains(start) {
        // Idle branch contributes no pointer mass; ⟨g⟩ = p1·(1 − s/L).
        let residual = p1 * ratio;
        (p1 - residual, residual)
    } else {
        let value = particle.p0() + p1 * (1.0 - ratio);
        (value, (value - p1).abs())
    };
    Ok(TimeAverageResult {
        n: config.n(),
        orbit_len: orbit.len(),
        s,
        method: AverageMethod::Spectral,
        value,
        detection_probability: p1,
        residual,
    })
}

/// Trapezoid time average of a pointer family along the flow of an
/// arbitrary combined state, over one full period `[0, n]`.
///
/// Orbit lengths divide `n`, so every matrix element of the flow is a
/// trigonometric polynomial in `t` with frequencies at multiples of `1/n`
/// up to `(n−1)/n`; the masses are their squared moduli, with bandwidth
/// `2(n−1)/n`. The periodic trapezoid rule with `K` steps integrates all
/// harmonics `|m| < K` exactly, hence the precondition `K ≥ 2n + 1` makes
/// the quadrature exact up to round-off — any disagreement with the
/// spectral route is a real bug, not discretisation error.
pub fn trajectory_average(
    state: &CombinedState,
    config: &PointerConfig,
    steps: usize,
    family: PointerFamily,
) -> Result<f64, PointerError> {
    if state.n() != config.n() {
        return Err(PointerError::WidthMismatch {
            state: state.n(),
            config: config.n(),
        });
    }
    let minimum = 2 * config.n() + 1;
    if steps < minimum {
        return Err(PointerError::QuadratureUnderresolved { steps, minimum });
    }
    let norm = state.norm();
    if !((norm - 1.0).abs() <= 1e-9) {
        return Err(PointerError::NotNormalized { norm });
    }

    let cocked = CockedSet::new(*config);
    let particle = state.particle();

    // The idle branch holds still (a global phase drops out of the mass),
    // so its cocked mass is one number for the whole trajectory.
    let idle_mass = {
        let mut mass = 0.0;
        for oa in state.idle().orbits() {
            let flags = cocked.membership_profile(oa.orbit());
            mass += masked_mass(oa.amps(), &flags);
        }
        let [amp_zero, amp_ones] = state.idle().fixed();
        if cocked.contains(&BasisIndex::zero(config.n())) {
            mass += amp_zero.norm_sqr();
        }
        if cocked.contains(&BasisIndex::all_ones(config.n())) {
            mass += amp_ones.norm_sqr();
        }
        mass
    };

    // Driven branch: precompute per-orbit spectra and membership flags, then
    // one forward FFT per orbit per time point.
    struct DrivenOrbit {
        block: MingBlock,
        spectrum: Vec<num_complex::Complex64>,
        flags: Vec<bool>,
    }
    let driven: Vec<DrivenOrbit> = state
        .driven()
        .orbits()
        .iter()
        .map(|oa: &OrbitAmplitudes| {
            let block = MingBlock::new(oa.orbit().len());
            let spectrum = block.analyze(oa.amps());
            let flags = cocked.membership_profile(oa.orbit());
            DrivenOrbit {
                block,
                spectrum,
                flags,
            }
        })
        .collect();
    let driven_fixed_mass = {
        let [amp_zero, amp_ones] = state.driven().fixed();
        let mut mass = 0.0;
        if cocked.contains(&BasisIndex::zero(config.n())) {
            mass += amp_zero.norm_sqr();
        }
        if cocked.contains(&BasisIndex::all_ones(config.n())) {
            mass += amp_ones.norm_sqr();
        }
        mass
    };

    let period = config.n() as f64;
    let dt = period / steps as f64;
    let mut acc = 0.0;
    for j in 0..=steps {
        let t = j as f64 * dt;
        let mut driven_mass = driven_fixed_mass;
        for d in &driven {
            let amps = d.block.evolve_spectrum(&d.spectrum, t);
            driven_mass += masked_mass(&amps, &d.flags);
        }
        let mass = particle.p0() * idle_mass + particle.p1() * driven_mass;
        let g = family.evaluate(mass);
        let weight = if j == 0 || j == steps { 0.5 } else { 1.0 };
        acc += weight * g;
    }
    Ok(acc / steps as f64)
}

/// Quadrature time average started from the canonical ready pattern.
pub fn time_average_quadrature(
    particle: ParticleAmplitudes,
    config: &PointerConfig,
    steps: usize,
) -> Result<TimeAverageResult, PointerError> {
    let cocked = CockedSet::new(*config);
    time_average_quadrature_from(particle, config, steps, &cocked.canonical())
}

/// Quadrature time average started from an arbitrary non-stationary basis
/// state.
pub fn time_average_quadrature_from(
    particle: ParticleAmplitudes,
    config: &PointerConfig,
    steps: usize,
    start: &BasisIndex,
) -> Result<TimeAverageResult, PointerError> {
    let cocked = CockedSet::new(*config);
    let orbit = orbit_of(start)?;
    let s = cocked
        .membership_profile(&orbit)
        .iter()
        .filter(|&&f| f)
        .count() as u64;
    let orbit_len = orbit.len();
    let state = CombinedState::product(particle, start);
    let value = trajectory_average(&state, config, steps, PointerFamily::MassDeficit)?;
    let p1 = particle.p1();
    Ok(TimeAverageResult {
        n: config.n(),
        orbit_len,
        s,
        method: AverageMethod::Quadrature,
        value,
        detection_probability: p1,
        residual: (value - p1).abs(),
    })
}

/// One row of a convergence sweep: both averaging routes at one width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Register width.
    pub n: usize,
    /// Cocked members on the canonical orbit.
    pub s: u64,
    /// `s / n`.
    pub s_over_n: f64,
    /// Closed-form time average.
    pub avg_spectral: f64,
    /// Quadrature time average.
    pub avg_quadrature: f64,
    /// `|a1|²·s/n`, the exact distance of the spectral average from the
    /// detection probability.
    pub residual: f64,
}

/// Computes one sweep row at width `n`. `steps = None` picks the smallest
/// even step count above the exactness bound (`2n + 2`).
pub fn convergence_row(
    n: usize,
    particle: ParticleAmplitudes,
    rule: BudgetRule,
    steps: Option<usize>,
) -> Result<SweepRow, PointerError> {
    let config = PointerConfig::new(n, rule)?;
    let spectral = time_average_spectral(particle, &config)?;
    let steps = steps.unwrap_or(2 * n + 2);
    let quadrature = time_average_quadrature(particle, &config, steps)?;
    Ok(SweepRow {
        n,
        s: spectral.s,
        s_over_n: spectral.s_over_n(),
        avg_spectral: spectral.value,
        avg_quadrature: quadrature.value,
        residual: spectral.residual,
    })
}

/// Convergence sweep across widths under one budget rule.
pub fn convergence_sweep(
    n_list: &[usize],
    particle: ParticleAmplitudes,
    rule: BudgetRule,
) -> Result<Vec<SweepRow>, PointerError> {
    n_list
        .iter()
        .map(|&n| convergence_row(n, particle, rule, None))
        .collect()
}

/// The two points of the limiting classical phase space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalPoint {
    /// Apparatus still cocked; pointer reads 0.
    Quiescent,
    /// Apparatus fired; pointer reads 1.
    Detected,
}

/// The `n → ∞` limit of the pointer statistics: a classical two-point
/// statistical state weighted by the Born probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalLimit {
    weight_quiescent: f64,
    weight_detected: f64,
}

impl ClassicalLimit {
    /// The two phase-space points.
    pub fn points() -> [ClassicalPoint; 2] {
        [ClassicalPoint::Quiescent, ClassicalPoint::Detected]
    }

    /// Weight of a phase-space point.
    pub fn weight(&self, point: ClassicalPoint) -> f64 {
        match point {
            ClassicalPoint::Quiescent => self.weight_quiescent,
            ClassicalPoint::Detected => self.weight_detected,
        }
    }

    /// Expectation of the pointer (0 on quiescent, 1 on detected): the
    /// detection probability.
    pub fn pointer_expectation(&self) -> f64 {
        self.weight_detected
    }
}

/// The classical statistical state the pointer averages converge to:
/// weights `(|a0|², |a1|²)` on (quiescent, detected).
pub fn classical_limit(particle: ParticleAmplitudes) -> ClassicalLimit {
    ClassicalLimit {
        weight_quiescent: particle.p0(),
        weight_detected: particle.p1(),
    }
}
