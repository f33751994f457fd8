//! Cross-validation of the generator and the flow against independent
//! dense oracles (see tests/common/mod.rs) plus the structural invariants
//! of the evolution: unitarity, the group law, h-independence.

mod common;

use common::*;
use ming_core::{
    evolve_combined, ming_entry, validate_dense, BasisIndex, CombinedState, MingBlock,
    MingDynamics, ParticleAmplitudes, PhysicalScale,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// The entry oracle: evaluate the Fourier sum `(ih/n²)·Σ_k k·ω^k`,
/// `ω = exp(−2πi(row−col)/n)`, term by term — no closed form, no shortcuts.
fn entry_by_summation(row: usize, col: usize, n: usize, h: f64) -> Complex64 {
    let delta = row as f64 - col as f64;
    let sum: Complex64 = (0..n)
        .map(|k| {
            Complex64::from_polar(k as f64, -2.0 * PI * k as f64 * delta / n as f64)
        })
        .sum();
    Complex64::new(0.0, h / (n as f64 * n as f64)) * sum
}

#[test]
fn closed_form_entries_match_the_fourier_sum() {
    for n in [3usize, 5, 8, 11, 31] {
        let scale = PhysicalScale::new(2.5).unwrap();
        let h = scale.h(n);
        for row in 0..n {
            for col in 0..n {
                let fast = ming_entry(row, col, n, scale);
                let slow = entry_by_summation(row, col, n, h);
                assert!(
                    (fast - slow).norm() < 1e-13,
                    "n = {n}, ({row}, {col}): {fast} vs {slow}"
                );
            }
        }
    }
}

#[test]
fn exponentiated_generator_is_the_cycle_permutation() {
    let scale = PhysicalScale::default();
    for n in [3usize, 5, 7, 11] {
        let rate = 2.0 * PI / scale.h(n);
        let g: Mat = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| ming_entry(r, c, n, scale) * rate)
                    .collect()
            })
            .collect();
        let dev = max_mat_dev(&taylor_expm(&g), &cycle(n));
        assert!(dev <= 1e-9, "n = {n}: deviation {dev:.3e}");
    }
}

#[test]
fn fft_flow_matches_the_dense_fourier_matrix_at_random_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260815);
    for n in [3usize, 5, 7, 11] {
        let block = MingBlock::new(n);
        let v = random_vec(&mut rng, n);
        for _ in 0..20 {
            let t = rng.gen_range(0.0..n as f64);
            let dense = matvec(&dft_flow(n, t), &v);
            let fast = block.evolve(&v, t);
            let dev = max_vec_dev(&dense, &fast);
            assert!(dev <= 1e-9, "n = {n}, t = {t}: deviation {dev:.3e}");
        }
    }
}

#[test]
fn dense_generator_flow_matches_fft_at_fractional_times() {
    // exp((2π/h)·A·t) — the generator route — against the FFT route: both
    // must realise the *same* logarithm branch.
    let phys = PhysicalScale::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [3usize, 5, 7, 11] {
        let rate = 2.0 * PI / phys.h(n);
        let g: Mat = (0..n)
            .map(|r| (0..n).map(|c| ming_entry(r, c, n, phys) * rate).collect())
            .collect();
        let block = MingBlock::new(n);
        let v = random_vec(&mut rng, n);
        for _ in 0..5 {
            let t = rng.gen_range(0.0..n as f64);
            let gt = scale(&g, Complex64::new(t, 0.0));
            let dense = matvec(&taylor_expm(&gt), &v);
            let fast = block.evolve(&v, t);
            assert!(max_vec_dev(&dense, &fast) <= 1e-9, "n = {n}, t = {t}");
        }
    }
}

#[test]
fn library_dense_validation_concurs() {
    for n in 1..=12 {
        validate_dense(n, PhysicalScale::default()).unwrap();
    }
}

#[test]
fn flow_is_unitary_across_widths() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in [3usize, 5, 7, 101, 1009] {
        let block = MingBlock::new(n);
        let v = random_vec(&mut rng, n);
        let before = vec_norm(&v);
        for &t in &[0.3, 1.0, 2.71, n as f64 / 3.0] {
            let after = vec_norm(&block.evolve(&v, t));
            assert!(
                (after - before).abs() <= 1e-12 * before,
                "n = {n}, t = {t}: {before} → {after}"
            );
        }
    }
}

#[test]
fn flow_satisfies_the_group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in [7usize, 101] {
        let block = MingBlock::new(n);
        let v = random_vec(&mut rng, n);
        for _ in 0..10 {
            let t = rng.gen_range(0.0..n as f64);
            let s = rng.gen_range(0.0..n as f64);
            let direct = block.evolve(&v, t + s);
            let composed = block.evolve(&block.evolve(&v, s), t);
            let dev = max_vec_dev(&direct, &composed);
            assert!(dev <= 1e-10, "n = {n}, t = {t}, s = {s}: {dev:.3e}");
        }
    }
}

#[test]
fn integer_times_reproduce_big_integer_rotation() {
    // The flow at integer t must agree with the exact rotation arithmetic,
    // even on registers far beyond machine-word width.
    let n = 101;
    let start = BasisIndex::from_u64(n, (1 << 51) - 1).unwrap();
    let particle = ParticleAmplitudes::from_detection_probability(0.5, 0.0).unwrap();
    let state = CombinedState::product(particle, &start);
    for steps in [1usize, 2, 17, 100] {
        let evolved = evolve_combined(&state, steps as f64);
        let expected = start.rotate_by(steps);
        let amp = evolved.driven().amplitude(&expected);
        assert!(
            (amp - Complex64::new(1.0, 0.0)).norm() < 1e-10,
            "after t = {steps}: amplitude {amp} at the rotated pattern"
        );
    }
}

#[test]
fn trajectories_are_bitwise_h_independent() {
    let n = 101;
    let start = BasisIndex::from_u64(n, (1 << 51) - 1).unwrap();
    let particle = ParticleAmplitudes::from_detection_probability(0.3, 0.0).unwrap();
    let state = CombinedState::product(particle, &start);
    let times = [0.0, 0.37, 1.0, 5.41, 99.9];

    let trajectory = |h0: f64| -> Vec<Vec<Complex64>> {
        let dynamics = MingDynamics::new(PhysicalScale::new(h0).unwrap());
        times
            .iter()
            .map(|&t| dynamics.evolve(&state, t).driven().orbits()[0].amps().to_vec())
            .collect()
    };

    let reference = trajectory(1.0);
    for h0 in [0.25, 137.0, 6.626e-34] {
        assert_eq!(trajectory(h0), reference, "h0 = {h0}");
    }
    // h enters the generator entries alone, and exactly linearly.
    let base = ming_entry(3, 0, n, PhysicalScale::new(1.0).unwrap());
    let scaled = ming_entry(3, 0, n, PhysicalScale::new(4.0).unwrap());
    assert!((scaled - base * 4.0).norm() < 1e-18);
}
