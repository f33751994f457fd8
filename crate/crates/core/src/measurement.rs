//! Projective measurement and the degeneracy discontinuity.
//!
//! A measurement of an observable with spectral resolution `{(λ_k, P_k)}`
//! on a state `ψ` yields outcome `λ_k` with the Born weight
//! `‖P_k ψ‖²/‖ψ‖²` and leaves the system in `P_k ψ / ‖P_k ψ‖`. Everything
//! here is scale-invariant in `ψ`, and the stock states below are kept with
//! *integer* components on purpose: all the probabilities and expectations
//! of the two-spin scenario are then dyadic rationals computed exactly in
//! floating point, so the headline discontinuity is equality-sharp, not
//! tolerance-sharp.
//!
//! The scenario: two spins in `ψ = |↑↑⟩ + |↑↓⟩` (unnormalised). Measuring
//! the first spin's projector `Q` (eigenvalue 1 on span{|↑↑⟩, |↑↓⟩})
//! disturbs nothing — `ψ` is already an eigenvector — so a subsequent
//! measurement of the superposition witness `R` (eigenvalue 1 along
//! `|↑↑⟩ + |↑↓⟩`) returns 1 with certainty. Split the degeneracy by an
//! arbitrarily small `ε` — eigenvalues `1 ± ε` on the two basis states —
//! and the first measurement now forces a choice between `|↑↑⟩` and
//! `|↑↓⟩`; either way `⟨R⟩` drops to exactly `1/2`. The post-measurement
//! expectation is a discontinuous function of the measured observable at
//! every degeneracy:
//!
//! ```text
//! ⟨R⟩(ε) = 1.0   at ε = 0
//! ⟨R⟩(ε) = 0.5   for every ε > 0
//! ```
//!
//! [`smoothing_scan`] offers a logistic crossover between the endpoints for
//! plotting finite-resolution intuition; it is an illustrative shape only —
//! the measurement axioms themselves say nothing about how a real apparatus
//! of finite resolution would interpolate, and no such interpolation is
//! derived here.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Outcomes with probability below this floor are omitted from results.
pub const PROBABILITY_FLOOR: f64 = 1e-15;

/// Tolerance for the resolution-of-identity check at construction.
pub const RESOLUTION_TOLERANCE: f64 = 1e-12;

/// Errors from observables and measurements.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    /// The eigenspace bases do not resolve the identity.
    #[error("eigenbases do not resolve the identity (max deviation {deviation:.3e})")]
    IllFormedObservable {
        /// Largest entry deviation of `Σ|b⟩⟨b|/‖b‖²` from the identity.
        deviation: f64,
    },
    /// Eigenvalues must be pairwise distinct.
    #[error("eigenvalue {0} listed twice")]
    RepeatedEigenvalue(f64),
    /// Eigenvalues must be finite reals.
    #[error("eigenvalue {0} is not finite")]
    NonFiniteEigenvalue(f64),
    /// Basis vectors must be nonzero and of the observable's dimension.
    #[error("eigenbasis vector has wrong shape or zero norm")]
    BadBasisVector,
    /// State and observable dimensions must agree.
    #[error("state has dimension {state}, observable acts on dimension {observable}")]
    DimensionMismatch {
        /// State dimension.
        state: usize,
        /// Observable dimension.
        observable: usize,
    },
    /// The zero vector is not a state.
    #[error("state vector has zero norm")]
    ZeroState,
    /// Perturbation parameters must be finite.
    #[error("perturbation {0} is not finite")]
    InvalidEpsilon(f64),
    /// Smoothing parameters must be positive and finite.
    #[error("smoothing parameters (width {width}, steepness {steepness}) must be positive finite")]
    InvalidSmoothing {
        /// Crossover width.
        width: f64,
        /// Logistic steepness.
        steepness: f64,
    },
}

#[derive(Debug)]
struct Eigenpair {
    value: f64,
    /// Orthogonal (not necessarily normalised) spanning vectors; projector
    /// weights divide by `‖b‖²` instead, so integer-component bases stay
    /// exact in floating point.
    basis: Vec<Vec<Complex64>>,
    norms_sqr: Vec<f64>,
}

/// A finite-dimensional observable given by its spectral resolution.
///
/// Construction verifies the resolution of identity
/// `Σ_k Σ_b |b⟩⟨b|/‖b‖² = I` to within [`RESOLUTION_TOLERANCE`] (for unit
/// frame constants this forces the vectors to be an orthogonal basis, so no
/// separate orthogonality check is needed); a constructed observable is
/// always well formed.
#[derive(Debug)]
pub struct Observable {
    dim: usize,
    pairs: Vec<Eigenpair>,
}

impl Observable {
    /// Builds an observable on dimension `dim` from `(eigenvalue,
    /// spanning vectors)` pairs.
    pub fn new(dim: usize, pairs: Vec<(f64, Vec<Vec<Complex64>>)>) -> Result<Self, MeasureError> {
        for (value, _) in &pairs {
            if !value.is_finite() {
                return Err(MeasureError::NonFiniteEigenvalue(*value));
            }
        }
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                if pairs[i].0 == pairs[j].0 {
                    return Err(MeasureError::RepeatedEigenvalue(pairs[i].0));
                }
            }
        }
        let mut built = Vec::with_capacity(pairs.len());
        for (value, basis) in pairs {
            let mut norms_sqr = Vec::with_capacity(basis.len());
            for b in &basis {
                if b.len() != dim {
                    return Err(MeasureError::BadBasisVector);
                }
                let nsq: f64 = b.iter().map(|z| z.norm_sqr()).sum();
                if nsq == 0.0 {
                    return Err(MeasureError::BadBasisVector);
                }
                norms_sqr.push(nsq);
            }
            built.push(Eigenpair {
                value,
                basis,
                norms_sqr,
            });
        }

        // Resolution of identity: Σ |b⟩⟨b|/‖b‖² = I entrywise.
        let mut deviation: f64 = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                let mut sum = Complex64::new(0.0, 0.0);
                for pair in &built {
                    for (b, nsq) in pair.basis.iter().zip(&pair.norms_sqr) {
                        sum += b[r] * b[c].conj() / nsq;
                    }
                }
                let target = Complex64::new(f64::from(u8::from(r == c)), 0.0);
                deviation = deviation.max((sum - target).norm());
            }
        }
        if !(deviation <= RESOLUTION_TOLERANCE) {
            return Err(MeasureError::IllFormedObservable { deviation });
        }
        Ok(Self { dim, pairs: built })
    }

    /// Dimension the observable acts on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues in the order given at construction.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// `‖P_k ψ‖²` for the unnormalised state `ψ`.
    fn weight(&self, k: usize, state: &[Complex64]) -> f64 {
        let pair = &self.pairs[k];
        pair.basis
            .iter()
            .zip(&pair.norms_sqr)
            .map(|(b, nsq)| inner(b, state).norm_sqr() / nsq)
            .sum()
    }

    /// `P_k ψ`, unnormalised.
    fn project(&self, k: usize, state: &[Complex64]) -> Vec<Complex64> {
        let pair = &self.pairs[k];
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (b, nsq) in pair.basis.iter().zip(&pair.norms_sqr) {
            let coeff = inner(b, state) / nsq;
            for (o, bi) in out.iter_mut().zip(b) {
                *o += bi * coeff;
            }
        }
        out
    }
}

fn inner(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum()
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// One branch of a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    /// The recorded eigenvalue.
    pub eigenvalue: f64,
    /// Born probability of this branch.
    pub probability: f64,
    /// The normalised post-measurement state.
    pub post_state: Vec<Complex64>,
}

/// Projective measurement of `obs` on `state` (any nonzero scaling):
/// outcomes in eigenpair order, branches below [`PROBABILITY_FLOOR`]
/// omitted.
pub fn measure(state: &[Complex64], obs: &Observable) -> Result<Vec<MeasurementOutcome>, MeasureError> {
    if state.len() != obs.dim {
        return Err(MeasureError::DimensionMismatch {
            state: state.len(),
            observable: obs.dim,
        });
    }
    let total = norm_sqr(state);
    if total == 0.0 {
        return Err(MeasureError::ZeroState);
    }
    let mut outcomes = Vec::new();
    for k in 0..obs.pairs.len() {
        let probability = obs.weight(k, state) / total;
        if probability < PROBABILITY_FLOOR {
            continue;
        }
        let projected = obs.project(k, state);
        let norm = norm_sqr(&projected).sqrt();
        let post_state = projected.iter().map(|z| z / norm).collect();
        outcomes.push(MeasurementOutcome {
            eigenvalue: obs.pairs[k].value,
            probability,
            post_state,
        });
    }
    Ok(outcomes)
}

/// `⟨obs⟩` on `state` (any nonzero scaling): `Σ λ_k ‖P_k ψ‖² / ‖ψ‖²`.
/// Square-root-free, hence exact on the integer-component fixtures.
pub fn expectation(state: &[Complex64], obs: &Observable) -> Result<f64, MeasureError> {
    if state.len() != obs.dim {
        return Err(MeasureError::DimensionMismatch {
            state: state.len(),
            observable: obs.dim,
        });
    }
    let total = norm_sqr(state);
    if total == 0.0 {
        return Err(MeasureError::ZeroState);
    }
    Ok((0..obs.pairs.len())
        .map(|k| obs.pairs[k].value * obs.weight(k, state))
        .sum::<f64>()
        / total)
}

// ---------------------------------------------------------------------------
// The two-spin degeneracy scenario. Basis order: |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
// ---------------------------------------------------------------------------

fn e(k: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 4];
    v[k] = Complex64::new(1.0, 0.0);
    v
}

fn int_vec(comps: [i32; 4]) -> Vec<Complex64> {
    comps
        .into_iter()
        .map(|x| Complex64::new(f64::from(x), 0.0))
        .collect()
}

/// The prepared state `|↑↑⟩ + |↑↓⟩`, deliberately unnormalised (integer
/// components keep every derived quantity exact; all measurement operations
/// are scale-invariant).
pub fn equal_superposition_state() -> Vec<Complex64> {
    int_vec([1, 1, 0, 0])
}

/// `Q`: "first spin is up" — eigenvalue 1 on span{|↑↑⟩, |↑↓⟩}, 0 on the
/// rest. Degenerate on the span containing the prepared state.
pub fn first_spin_observable() -> Observable {
    Observable::new(4, vec![(1.0, vec![e(0), e(1)]), (0.0, vec![e(2), e(3)])])
        .expect("stock observable is well formed")
}

/// `Q_ε`: the degeneracy split by `ε` — eigenvalues `1 + ε` on |↑↑⟩ and
/// `1 − ε` on |↑↓⟩, 0 on the rest. `ε = 0` is rejected (the split
/// eigenvalues coincide); use [`first_spin_observable`] there.
pub fn split_first_spin_observable(eps: f64) -> Result<Observable, MeasureError> {
    if !eps.is_finite() {
        return Err(MeasureError::InvalidEpsilon(eps));
    }
    Observable::new(
        4,
        vec![
            (1.0 + eps, vec![e(0)]),
            (1.0 - eps, vec![e(1)]),
            (0.0, vec![e(2), e(3)]),
        ],
    )
}

/// `R`: the superposition witness — eigenvalue 1 along `|↑↑⟩ + |↑↓⟩`,
/// 0 on its orthocomplement.
pub fn superposition_witness() -> Observable {
    Observable::new(
        4,
        vec![
            (1.0, vec![int_vec([1, 1, 0, 0])]),
            (0.0, vec![int_vec([1, -1, 0, 0]), e(2), e(3)]),
        ],
    )
    .expect("stock observable is well formed")
}

/// One point of the degeneracy scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ParadoxRow {
    /// Degeneracy splitting of the first measurement.
    pub eps: f64,
    /// `⟨R⟩` after the first measurement, averaged over its outcomes.
    pub expectation_r: f64,
    /// `(eigenvalue, probability)` of the first measurement's branches.
    pub outcomes: Vec<(f64, f64)>,
}

/// Measures `Q` (or `Q_ε`) on `|↑↑⟩ + |↑↓⟩`, then reports the
/// outcome-averaged `⟨R⟩`, for each `ε` in the grid.
///
/// All arithmetic is square-root-free on integer-component fixtures: the
/// returned values are exactly `1.0` at `ε = 0` and exactly `0.5` at every
/// `ε ≠ 0`.
pub fn paradox_scan(eps_grid: &[f64]) -> Result<Vec<ParadoxRow>, MeasureError> {
    let psi = equal_superposition_state();
    let witness = superposition_witness();
    let total = norm_sqr(&psi);
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let first = if eps == 0.0 {
            first_spin_observable()
        } else {
            split_first_spin_observable(eps)?
        };
        let mut outcomes = Vec::new();
        let mut expectation_r = 0.0;
        for k in 0..first.pairs.len() {
            let probability = first.weight(k, &psi) / total;
            if probability < PROBABILITY_FLOOR {
                continue;
            }
            // Collapse without normalising: ⟨R⟩ is scale-invariant, and
            // skipping the square root keeps the dyadic arithmetic exact.
            let collapsed = first.project(k, &psi);
            expectation_r += probability * expectation(&collapsed, &witness)?;
            outcomes.push((first.pairs[k].value, probability));
        }
        rows.push(ParadoxRow {
            eps,
            expectation_r,
            outcomes,
        });
    }
    Ok(rows)
}

/// A logistic crossover between the degeneracy endpoints, for plotting:
/// `v(ε) = 1/2 + 1/2·(1 + (|ε|/width)^steepness)⁻¹`.
///
/// Illustrative only — see [`Self::note`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingModel {
    width: f64,
    steepness: f64,
}

impl SmoothingModel {
    /// A crossover of the given width and steepness (both positive finite).
    pub fn new(width: f64, steepness: f64) -> Result<Self, MeasureError> {
        if !(width.is_finite() && width > 0.0 && steepness.is_finite() && steepness > 0.0) {
            return Err(MeasureError::InvalidSmoothing { width, steepness });
        }
        Ok(Self { width, steepness })
    }

    /// Width `w` with the default steepness 2.
    pub fn with_width(width: f64) -> Result<Self, MeasureError> {
        Self::new(width, 2.0)
    }

    /// Crossover width: `v(width) = 0.75`, halfway between the endpoints.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Logistic steepness in `log ε`.
    pub fn steepness(&self) -> f64 {
        self.steepness
    }

    /// The smoothed value at `ε`: 1 at `ε = 0`, monotone down to 1/2, and
    /// pointwise → the exact step as `width → 0`.
    pub fn evaluate(&self, eps: f64) -> f64 {
        let x = (eps.abs() / self.width).powf(self.steepness);
        0.5 + 0.5 / (1.0 + x)
    }

    /// Why these values carry no physical weight.
    pub fn note() -> &'static str {
        "illustrative crossover: the measurement axioms fix only the endpoints \
         (1 at eps = 0, 1/2 for eps > 0); this logistic shape is a plotting aid, \
         not a derived prediction"
    }
}

/// One point of a smoothed scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingRow {
    /// Degeneracy splitting.
    pub eps: f64,
    /// Smoothed stand-in for `⟨R⟩`.
    pub smoothed_expectation_r: f64,
}

/// Evaluates the smoothing model over a grid.
pub fn smoothing_scan(eps_grid: &[f64], model: SmoothingModel) -> Vec<SmoothingRow> {
    eps_grid
        .iter()
        .map(|&eps| SmoothingRow {
            eps,
            smoothed_expectation_r: model.evaluate(eps),
        })
        .collect()
}

/// Seeded two-stage sampling demo: draw an outcome of `first` on `state`,
/// collapse, draw an outcome of `second`, and average the second
/// eigenvalue over `shots` repetitions. Converges to the analytic
/// outcome-averaged expectation at the usual `1/√shots` rate; the rate is
/// pinned down in the test suite.
pub fn sample_sequential_expectation(
    state: &[Complex64],
    first: &Observable,
    second: &Observable,
    shots: u64,
    seed: u64,
) -> Result<f64, MeasureError> {
    let branches = measure(state, first)?;
    // Precompute each branch's second-stage distribution.
    let chains: Vec<(f64, Vec<(f64, f64)>)> = branches
        .iter()
        .map(|b| {
            let second_outcomes = measure(&b.post_state, second)?;
            Ok((
                b.probability,
                second_outcomes
                    .iter()
                    .map(|o| (o.eigenvalue, o.probability))
                    .collect(),
            ))
        })
        .collect::<Result<_, MeasureError>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |grid: &[(f64, f64)], u: f64| -> f64 {
        let mut acc = 0.0;
        for &(value, p) in grid {
            acc += p;
            if u < acc {
                return value;
            }
        }
        grid.last().map(|&(value, _)| value).unwrap_or(0.0)
    };
    let first_grid: Vec<(f64, f64)> = chains
        .iter()
        .enumerate()
        .map(|(i, (p, _))| (i as f64, *p))
        .collect();
    let mut sum = 0.0;
    for _ in 0..shots {
        let i = draw(&first_grid, rng.gen::<f64>()) as usize;
        sum += draw(&chains[i].1, rng.gen::<f64>());
    }
    Ok(sum / shots as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn construction_rejects_ill_formed_resolutions() {
        // Missing a basis vector: Σ projectors ≠ I.
        let err = Observable::new(4, vec![(1.0, vec![e(0)]), (0.0, vec![e(2), e(3)])]).unwrap_err();
        assert!(matches!(err, MeasureError::IllFormedObservable { .. }));
        // Non-orthogonal spanning vectors oversum the identity.
        let skew = vec![cv(1.0), cv(1.0), cv(0.0), cv(0.0)];
        let err = Observable::new(
            4,
            vec![(1.0, vec![e(0), skew]), (0.0, vec![e(2), e(3)])],
        )
        .unwrap_err();
        assert!(matches!(err, MeasureError::IllFormedObservable { .. }));
        // Repeated eigenvalue.
        let err = Observable::new(4, vec![(1.0, vec![e(0), e(1)]), (1.0, vec![e(2), e(3)])])
            .unwrap_err();
        assert!(matches!(err, MeasureError::RepeatedEigenvalue(v) if v == 1.0));
        // Zero or misshapen vectors.
        assert!(matches!(
            Observable::new(4, vec![(1.0, vec![vec![cv(0.0); 4]]), (0.0, vec![e(1), e(2), e(3)])]),
            Err(MeasureError::BadBasisVector)
        ));
        assert!(matches!(
            Observable::new(4, vec![(1.0, vec![vec![cv(1.0); 3]])]),
            Err(MeasureError::BadBasisVector)
        ));
    }

    #[test]
    fn born_weights_are_exact_on_integer_states() {
        let obs = Observable::new(2, vec![(2.0, vec![vec![cv(1.0), cv(0.0)]]), (5.0, vec![vec![cv(0.0), cv(1.0)]])])
            .unwrap();
        let psi = vec![cv(3.0), Complex64::new(0.0, 4.0)];
        let outcomes = measure(&psi, &obs).unwrap();
        assert_eq!(outcomes.len(), 2);
        assert_eq!(outcomes[0].probability, 9.0 / 25.0);
        assert_eq!(outcomes[1].probability, 16.0 / 25.0);
        assert_eq!(expectation(&psi, &obs).unwrap(), 2.0 * 0.36 + 5.0 * 0.64);
    }

    #[test]
    fn vanishing_branches_are_omitted() {
        let outcomes = measure(&e(0), &first_spin_observable()).unwrap();
        assert_eq!(outcomes.len(), 1);
        assert_eq!(outcomes[0].eigenvalue, 1.0);
        assert_eq!(outcomes[0].probability, 1.0);
    }

    #[test]
    fn repeated_measurement_is_stable() {
        let psi = vec![cv(0.5), cv(0.5), cv(0.5), cv(0.5)];
        let obs = first_spin_observable();
        for outcome in measure(&psi, &obs).unwrap() {
            let again = measure(&outcome.post_state, &obs).unwrap();
            assert_eq!(again.len(), 1, "second measurement must be certain");
            assert_eq!(again[0].eigenvalue, outcome.eigenvalue);
            assert!((again[0].probability - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn expectation_is_scale_invariant() {
        let psi = equal_superposition_state();
        let doubled: Vec<Complex64> = psi.iter().map(|z| z * 2.0).collect();
        let witness = superposition_witness();
        assert_eq!(
            expectation(&psi, &witness).unwrap(),
            expectation(&doubled, &witness).unwrap()
        );
    }

    #[test]
    fn degenerate_first_measurement_leaves_the_witness_certain() {
        let rows = paradox_scan(&[0.0]).unwrap();
        assert_eq!(rows[0].expectation_r, 1.0);
        assert_eq!(rows[0].outcomes, vec![(1.0, 1.0)]);
    }

    #[test]
    fn any_split_halves_the_witness_exactly() {
        for eps in [1e-12, 1e-6, 1e-3, 0.1, 0.5] {
            let rows = paradox_scan(&[eps]).unwrap();
            let row = &rows[0];
            assert_eq!(row.expectation_r, 0.5, "eps = {eps}");
            assert_eq!(row.outcomes.len(), 2);
            assert_eq!(row.outcomes[0], (1.0 + eps, 0.5));
            assert_eq!(row.outcomes[1], (1.0 - eps, 0.5));
        }
    }

    #[test]
    fn degeneracy_scan_handles_mixed_grids() {
        let rows = paradox_scan(&[0.0, 1e-3, 1e-2, 1e-1]).unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.expectation_r).collect();
        assert_eq!(values, vec![1.0, 0.5, 0.5, 0.5]);
        assert!(matches!(
            paradox_scan(&[f64::NAN]),
            Err(MeasureError::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn zero_state_and_dimension_mismatch_are_rejected() {
        let obs = first_spin_observable();
        assert!(matches!(
            measure(&[cv(0.0); 4], &obs),
            Err(MeasureError::ZeroState)
        ));
        assert!(matches!(
            measure(&[cv(1.0); 3], &obs),
            Err(MeasureError::DimensionMismatch { state: 3, observable: 4 })
        ));
    }

    #[test]
    fn smoothing_has_the_right_shape() {
        let model = SmoothingModel::with_width(0.01).unwrap();
        assert_eq!(model.evaluate(0.0), 1.0);
        assert!((model.evaluate(0.01) - 0.75).abs() < 1e-15);
        let grid = [0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0];
        let rows = smoothing_scan(&grid, model);
        for w in rows.windows(2) {
            assert!(
                w[1].smoothed_expectation_r < w[0].smoothed_expectation_r,
                "monotone decrease"
            );
        }
        assert!(rows.last().unwrap().smoothed_expectation_r - 0.5 < 1e-4);
        // Narrow widths recover the exact step pointwise.
        let sharp = SmoothingModel::with_width(1e-12).unwrap();
        assert_eq!(sharp.evaluate(0.0), 1.0);
        assert!((sharp.evaluate(1e-3) - 0.5).abs() < 1e-15);
        assert!(SmoothingModel::new(0.0, 2.0).is_err());
        assert!(SmoothingModel::new(0.1, -1.0).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_roughly_right() {
        let psi = equal_superposition_state();
        let first = split_first_spin_observable(0.1).unwrap();
        let second = superposition_witness();
        let a = sample_sequential_expectation(&psi, &first, &second, 4096, 7).unwrap();
        let b = sample_sequential_expectation(&psi, &first, &second, 4096, 7).unwrap();
        assert_eq!(a, b, "same seed, same estimate");
        assert!((a - 0.5).abs() < 0.05, "estimate {a} should sit near 0.5");
    }
}
