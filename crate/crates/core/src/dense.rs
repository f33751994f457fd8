//! Dense cross-validation of the amplifier block at small widths.
//!
//! The fast evolution path never materialises the generator: it applies
//! Fourier phases directly. This module rebuilds everything the slow,
//! obvious way — the full matrix from [`ming_entry`], a literal
//! scaling-and-squaring matrix exponential, the explicit DFT matrix — and
//! checks that
//!
//! 1. the generator is skew-hermitian,
//! 2. `exp((2π/h)·A)` is exactly the one-step cycle permutation, and
//! 3. `exp((2π/h)·A·t)` agrees with the FFT flow at fractional times
//!    (this is the statement that both sides picked the *same* logarithm
//!    branch, not merely logarithms of the same unitary).
//!
//! Everything here is `O(n³)` and capped at `n ≤ 12`; it exists to anchor
//! the fast path, not to be fast.

use crate::dynamics::{ming_entry, MingBlock, PhysicalScale};
use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Dense validation is capped at this width (`2^n` plays no role here, but
/// `O(n³)` exponentials at every test site add up).
pub const DENSE_WIDTH_CAP: usize = 12;

/// Tolerance for skew-hermiticity (Frobenius norm of `A + A†`).
pub const SKEW_TOLERANCE: f64 = 1e-10;
/// Tolerance for the cycle and fractional-flow checks (max entry deviation).
pub const FLOW_TOLERANCE: f64 = 1e-9;

/// Errors from the dense validation path.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    /// Width beyond the dense cap.
    #[error("width {n} exceeds the dense validation cap {cap}")]
    CapExceeded {
        /// Requested width.
        n: usize,
        /// The cap.
        cap: usize,
    },
    /// One of the three checks exceeded its tolerance.
    #[error("dense validation failed: {check} deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    Failed {
        /// Which check failed.
        check: &'static str,
        /// Observed deviation.
        deviation: f64,
        /// Allowed tolerance.
        tolerance: f64,
    },
}

/// Deviations observed by a successful validation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseReport {
    /// Width that was validated.
    pub n: usize,
    /// Frobenius norm of `A + A†`.
    pub skew_deviation: f64,
    /// Max-entry deviation of `exp((2π/h)A)` from the cycle permutation.
    pub cycle_deviation: f64,
    /// Max deviation of dense `exp((2π/h)A·t)·v` from the FFT flow over the
    /// fractional-time grid.
    pub flow_deviation: f64,
}

impl DenseReport {
    /// The largest of the three deviations.
    pub fn max_deviation(&self) -> f64 {
        self.skew_deviation
            .max(self.cycle_deviation)
            .max(self.flow_deviation)
    }
}

/// The width-`n` amplifier block as a dense matrix.
pub fn dense_block(n: usize, scale: PhysicalScale) -> Array2<Complex64> {
    Array2::from_shape_fn((n, n), |(r, c)| ming_entry(r, c, n, scale))
}

/// The one-step cycle permutation on orbit positions, `P·e_j = e_{j+1 mod n}`.
pub fn cycle_permutation(n: usize) -> Array2<Complex64> {
    Array2::from_shape_fn((n, n), |(r, c)| {
        if r == (c + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Matrix exponential by scaling and squaring with a Taylor core.
///
/// The scaled norm is pushed below 1/2, where 24 Taylor terms already sit
/// at the round-off floor; matrices here are tiny and well conditioned
/// (skew-hermitian, norm a few units), so Padé machinery would be noise.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    // Infinity norm → number of halvings to bring it under 1/2.
    let norm = a
        .rows()
        .into_iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as u32
    };
    let scaled = a.mapv(|z| z / 2f64.powi(squarings as i32));

    let mut result = Array2::<Complex64>::eye(n);
    let mut term = Array2::<Complex64>::eye(n);
    for j in 1..=24 {
        term = term.dot(&scaled).mapv(|z| z / j as f64);
        result += &term;
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}

/// Largest entry magnitude of `a − b`.
pub fn max_entry_deviation(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Runs the three dense checks at width `n`; see the module docs.
///
/// Fractional times are a fixed deterministic grid (irrational spacings so
/// nothing aligns with the orbit period); randomised sweeps live in the
/// test suite on top of this.
pub fn validate_dense(n: usize, scale: PhysicalScale) -> Result<DenseReport, ValidationError> {
    if n > DENSE_WIDTH_CAP {
        return Err(ValidationError::CapExceeded {
            n,
            cap: DENSE_WIDTH_CAP,
        });
    }

    let a = dense_block(n, scale);

    // 1. Skew-hermiticity: ‖A + A†‖_F.
    let mut skew_sq = 0.0;
    for r in 0..n {
        for c in 0..n {
            skew_sq += (a[(r, c)] + a[(c, r)].conj()).norm_sqr();
        }
    }
    let skew_deviation = skew_sq.sqrt();
    if !(skew_deviation <= SKEW_TOLERANCE) {
        return Err(ValidationError::Failed {
            check: "skew-hermiticity",
            deviation: skew_deviation,
            tolerance: SKEW_TOLERANCE,
        });
    }

    // 2. One unit of time is one cycle step: exp((2π/h)A) = P.
    let rate = 2.0 * PI / scale.h(n);
    let generator = a.mapv(|z| z * rate);
    let cycle_deviation = max_entry_deviation(&expm(&generator), &cycle_permutation(n));
    if !(cycle_deviation <= FLOW_TOLERANCE) {
        return Err(ValidationError::Failed {
            check: "unit-time cycle",
            deviation: cycle_deviation,
            tolerance: FLOW_TOLERANCE,
        });
    }

    // 3. Same log branch at fractional times: exp((2π/h)A·t)·v vs FFT flow.
    let v: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(1.0 + (j as f64) * 0.37, ((j * j) as f64 * 0.11).sin()))
        .collect();
    let block = MingBlock::new(n);
    let mut flow_deviation: f64 = 0.0;
    for m in 1..=7 {
        let t = m as f64 * 0.618_033_988_749_894_9; // golden-ratio stride
        let dense_u = expm(&generator.mapv(|z| z * t));
        let fast = block.evolve(&v, t);
        let dev = (0..n)
            .map(|r| {
                let dense_r: Complex64 = (0..n).map(|c| dense_u[(r, c)] * v[c]).sum();
                (dense_r - fast[r]).norm()
            })
            .fold(0.0, f64::max);
        flow_deviation = flow_deviation.max(dev);
    }
    if !(flow_deviation <= FLOW_TOLERANCE) {
        return Err(ValidationError::Failed {
            check: "fractional-time flow",
            deviation: flow_deviation,
            tolerance: FLOW_TOLERANCE,
        });
    }

    Ok(DenseReport {
        n,
        skew_deviation,
        cycle_deviation,
        flow_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_zero_is_identity() {
        let zero = Array2::<Complex64>::zeros((4, 4));
        assert!(max_entry_deviation(&expm(&zero), &Array2::eye(4)) < 1e-15);
    }

    #[test]
    fn expm_matches_scalar_exponentials_on_diagonals() {
        let d = Array2::from_diag(&ndarray::arr1(&[
            Complex64::new(0.3, 0.0),
            Complex64::new(0.0, 1.2),
            Complex64::new(-0.7, 2.0),
        ]));
        let e = expm(&d);
        for (k, z) in [Complex64::new(0.3, 0.0), Complex64::new(0.0, 1.2), Complex64::new(-0.7, 2.0)]
            .into_iter()
            .enumerate()
        {
            assert!((e[(k, k)] - z.exp()).norm() < 1e-13);
        }
        assert!(e[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn expm_reproduces_planar_rotations() {
        let theta = 1.234;
        let mut g = Array2::<Complex64>::zeros((2, 2));
        g[(0, 1)] = Complex64::new(-theta, 0.0);
        g[(1, 0)] = Complex64::new(theta, 0.0);
        let e = expm(&g);
        assert!((e[(0, 0)].re - theta.cos()).abs() < 1e-13);
        assert!((e[(1, 0)].re - theta.sin()).abs() < 1e-13);
    }

    #[test]
    fn validation_passes_across_the_dense_range() {
        let scale = PhysicalScale::default();
        for n in 1..=DENSE_WIDTH_CAP {
            let report = validate_dense(n, scale).unwrap_or_else(|e| panic!("n = {n}: {e}"));
            assert!(report.max_deviation() < 1e-10, "n = {n}: {report:?}");
        }
    }

    #[test]
    fn validation_is_scale_independent() {
        for h0 in [0.25, 1.0, 1000.0] {
            let report = validate_dense(7, PhysicalScale::new(h0).unwrap()).unwrap();
            assert!(report.max_deviation() < 1e-10, "h0 = {h0}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            validate_dense(13, PhysicalScale::default()),
            Err(ValidationError::CapExceeded { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn cycle_permutation_moves_positions_forward() {
        let p = cycle_permutation(3);
        assert_eq!(p[(1, 0)].re, 1.0);
        assert_eq!(p[(2, 1)].re, 1.0);
        assert_eq!(p[(0, 2)].re, 1.0);
        assert_eq!(p[(0, 0)].re, 0.0);
    }
}
