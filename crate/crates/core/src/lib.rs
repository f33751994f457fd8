//! Simulation and verification toolkit for a finite amplifier model of
//! quantum measurement.
//!
//! The model couples a two-level particle (amplitudes `a0`, `a1`) to an
//! n-qubit register whose computational basis states are read as n-bit
//! integers. A distinguished *driven* dynamics walks each basis state through
//! its bit-rotation orbit at unit speed: after one time unit the state
//! `|d_{n-1} d_{n-2} … d_0⟩` has become its left rotation. Detection is
//! amplified by letting the register evolve only on the particle's `ψ1`
//! branch while the `ψ0` branch holds still, so a microscopic superposition
//! turns into a macroscopically distinguishable pair of register histories.
//!
//! The crate is organised around four concerns:
//!
//! - [`basis`] / [`orbit`]: exact arithmetic on basis indices (arbitrary
//!   width via big integers), the doubling-mod-`2^n − 1` rotation rule, and
//!   the orbit decomposition of the register space for prime `n`.
//! - [`dynamics`] / [`dense`]: the generator of the rotation flow (a
//!   circulant matrix with an explicit closed form), fast evolution of orbit
//!   amplitude vectors via FFT diagonalisation, and a dense small-`n`
//!   cross-validation path that exponentiates the generator directly.
//! - [`pointer`] / [`macroscopic`]: the "cocked set" of register states
//!   within a defect budget of the ready pattern, the pointer observable
//!   `1 − (mass in the cocked set)`, its infinite-time averages (closed-form
//!   spectral route and numerical quadrature route), the convergence of those
//!   averages to the detection probability `|a1|²` as `n → ∞`, and a
//!   product-state check that the verdict does not depend on microscopic
//!   prefixes of the apparatus.
//! - [`measurement`]: textbook projective measurement (Born weights +
//!   projection), used to exhibit an exact discontinuity in post-measurement
//!   expectations when a degenerate observable is split by an arbitrarily
//!   small perturbation.
//!
//! Time is measured in orbit periods: the driven flow returns every basis
//! state to itself at `t = n`. Planck's constant enters only through the
//! generator's matrix entries (scaled as `h0 / n`); trajectories themselves
//! are h-independent by construction, and the test suite pins that down to
//! bitwise equality.

// Validation guards are written `!(x <= tol)` rather than `x > tol` so that
// a NaN deviation fails loudly instead of slipping through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod dense;
pub mod dynamics;
pub mod macroscopic;
pub mod measurement;
pub mod orbit;
pub mod pointer;

pub use basis::{BasisIndex, IndexError};
pub use dense::{validate_dense, DenseReport, ValidationError, DENSE_WIDTH_CAP};
pub use dynamics::{
    evolve_combined, evolve_orbit, ming_entry, BranchState, CombinedState, DynamicsError,
    MingBlock, MingDynamics, OrbitAmplitudes, ParticleAmplitudes, PhysicalScale,
};
pub use macroscopic::{
    macroscopic_check, standard_prefixes, MacroscopicReport, Prefix, PrefixRow, TailState,
    MACRO_SPREAD_TOLERANCE,
};
pub use measurement::{
    equal_superposition_state, expectation, first_spin_observable, measure, paradox_scan,
    sample_sequential_expectation, smoothing_scan, split_first_spin_observable,
    superposition_witness, MeasureError, MeasurementOutcome, Observable, ParadoxRow,
    SmoothingModel, SmoothingRow, PROBABILITY_FLOOR, RESOLUTION_TOLERANCE,
};
pub use orbit::{
    decompose, is_prime, orbit_of, Orbit, OrbitDecomposition, OrbitError, DECOMPOSE_WIDTH_CAP,
};
pub use pointer::{
    classical_limit, convergence_row, convergence_sweep, defect_count, pointer_value,
    time_average_quadrature, time_average_quadrature_from, time_average_spectral,
    time_average_spectral_from, trajectory_average, AverageMethod, BudgetRule, ClassicalLimit,
    ClassicalPoint, CockedSet, PointerConfig, PointerError, PointerFamily, SweepRow,
    TimeAverageResult, INDICATOR_TOLERANCE,
};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
