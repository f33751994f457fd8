//! Property tests for the pointer statistics: route agreement, phase and
//! gauge invariances, affinity in the detection probability, and the
//! non-uniqueness counterexample.

use ming_core::{
    pointer_value, time_average_quadrature, time_average_spectral, time_average_spectral_from,
    trajectory_average, BasisIndex, BudgetRule, CockedSet, CombinedState, MingDynamics,
    ParticleAmplitudes, PhysicalScale, PointerConfig, PointerFamily,
};
use num_bigint::BigUint;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const SMALL_PRIMES: [usize; 5] = [3, 5, 7, 11, 13];

proptest! {
    /// The closed form and the trapezoid quadrature are two routes to the
    /// same number whenever the step count clears the bandwidth bound.
    #[test]
    fn spectral_and_quadrature_agree(
        idx in 0usize..SMALL_PRIMES.len(),
        p1 in 0.0f64..=1.0,
        extra in 0usize..16,
        zero_budget in proptest::bool::ANY,
    ) {
        let n = SMALL_PRIMES[idx];
        let rule = if zero_budget { BudgetRule::Zero } else { BudgetRule::Sqrt };
        let config = PointerConfig::new(n, rule).unwrap();
        let particle = ParticleAmplitudes::from_detection_probability(p1, 0.0).unwrap();
        let spectral = time_average_spectral(particle, &config).unwrap();
        let quad = time_average_quadrature(particle, &config, 2 * n + 1 + extra).unwrap();
        prop_assert!(
            (spectral.value - quad.value).abs() <= 1e-9,
            "n = {}: {} vs {}", n, spectral.value, quad.value
        );
    }

    /// The time average depends on the particle only through `|a1|²`; an
    /// arbitrary relative phase must move it by round-off at most.
    #[test]
    fn particle_phase_is_irrelevant(
        p1 in 0.0f64..=1.0,
        phase in -std::f64::consts::PI..std::f64::consts::PI,
    ) {
        let config = PointerConfig::new(11, BudgetRule::Sqrt).unwrap();
        let flat = ParticleAmplitudes::from_detection_probability(p1, 0.0).unwrap();
        let tilted = ParticleAmplitudes::from_detection_probability(p1, phase).unwrap();
        let a = time_average_spectral(flat, &config).unwrap().value;
        let b = time_average_spectral(tilted, &config).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12);
    }

    /// The spectral average is affine in the detection probability with no
    /// constant term: `value(p1) = p1·(1 − s/L)`.
    #[test]
    fn spectral_average_is_linear_in_p1(pa in 0.01f64..=1.0, pb in 0.01f64..=1.0) {
        let config = PointerConfig::new(13, BudgetRule::Sqrt).unwrap();
        let value = |p1: f64| {
            let particle = ParticleAmplitudes::from_detection_probability(p1, 0.0).unwrap();
            time_average_spectral(particle, &config).unwrap().value
        };
        prop_assert!((value(pa) * pb - value(pb) * pa).abs() <= 1e-12);
    }
}

#[test]
fn quarter_turn_phases_reproduce_the_average_bitwise() {
    // a1 ↦ i·a1, −a1, −i·a1 permute real and imaginary parts without any
    // arithmetic, so every statistic downstream is identical bit for bit.
    let config = PointerConfig::new(101, BudgetRule::Sqrt).unwrap();
    let variants = [
        ParticleAmplitudes::new(c(0.8, 0.0), c(0.6, 0.0)).unwrap(),
        ParticleAmplitudes::new(c(0.8, 0.0), c(0.0, 0.6)).unwrap(),
        ParticleAmplitudes::new(c(0.8, 0.0), c(-0.6, 0.0)).unwrap(),
        ParticleAmplitudes::new(c(0.8, 0.0), c(0.0, -0.6)).unwrap(),
    ];
    let reference = time_average_spectral(variants[0], &config).unwrap();
    for particle in &variants[1..] {
        let result = time_average_spectral(*particle, &config).unwrap();
        assert_eq!(result.value.to_bits(), reference.value.to_bits());
        assert_eq!(result.residual.to_bits(), reference.residual.to_bits());
    }
    // Same for the quadrature route, whose trajectory masses never touch
    // the particle phase either.
    let steps = 2 * 101 + 2;
    let quad_ref = time_average_quadrature(variants[0], &config, steps).unwrap();
    for particle in &variants[1..] {
        let quad = time_average_quadrature(*particle, &config, steps).unwrap();
        assert_eq!(quad.value.to_bits(), quad_ref.value.to_bits());
    }
}

#[test]
fn idle_phase_gauge_leaves_the_pointer_reading_fixed() {
    let n = 31;
    let config = PointerConfig::new(n, BudgetRule::Sqrt).unwrap();
    let cocked = CockedSet::new(config);
    let particle = ParticleAmplitudes::from_detection_probability(0.42, 0.3).unwrap();
    let state = CombinedState::product(particle, &cocked.canonical());
    let still = MingDynamics::new(PhysicalScale::default());
    for rate in [0.7, -2.0, 12.5] {
        let turning = MingDynamics::new(PhysicalScale::default()).with_idle_phase_rate(rate);
        for &t in &[0.0, 0.37, 1.0, 4.9, 17.2] {
            let a = pointer_value(&still.evolve(&state, t), &cocked).unwrap();
            let b = pointer_value(&turning.evolve(&state, t), &cocked).unwrap();
            assert!(
                (a - b).abs() <= 1e-12,
                "rate = {rate}, t = {t}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn average_depends_on_the_start_only_through_cocked_membership() {
    // The driven branch forgets where on the orbit it started, but the idle
    // branch sits at the start forever: any cocked start of one orbit gives
    // the same average bit for bit, and a non-cocked start of the same
    // orbit shifts it by exactly p0 (the idle branch now reads 1, not 0).
    let config = PointerConfig::new(31, BudgetRule::Sqrt).unwrap();
    assert_eq!(config.budget(), 5);
    let cocked = CockedSet::new(config);
    let particle = ParticleAmplitudes::from_detection_probability(0.3, 0.0).unwrap();
    let start = cocked.canonical();
    let reference = time_average_spectral_from(particle, &config, &start).unwrap();
    for k in [1usize, 2, 29, 30] {
        let moved = start.rotate_by(k);
        assert!(cocked.contains(&moved), "rotation by {k} has defect ≤ 4");
        let shifted = time_average_spectral_from(particle, &config, &moved).unwrap();
        assert_eq!(shifted.value.to_bits(), reference.value.to_bits());
        assert_eq!(shifted.s, reference.s);
    }
    let outside = start.rotate_by(7); // defect 14, well past the budget
    assert!(!cocked.contains(&outside));
    let from_outside = time_average_spectral_from(particle, &config, &outside).unwrap();
    assert_eq!(from_outside.s, reference.s, "s is a property of the orbit");
    let p0 = particle.p0();
    assert!(
        ((from_outside.value - reference.value) - p0).abs() <= 1e-15,
        "idle branch contributes exactly p0: {} vs {} + {p0}",
        from_outside.value,
        reference.value
    );
}

#[test]
fn every_cocked_start_converges_to_the_detection_probability() {
    // n = 211 (prime), budget ⌊√211⌋ = 14: perturb the ready pattern inside
    // the budget and check the average still lands within p1·s/L of p1.
    let n = 211;
    let config = PointerConfig::new(n, BudgetRule::Sqrt).unwrap();
    assert_eq!(config.budget(), 14);
    let cocked = CockedSet::new(config);
    let p1 = 0.3;
    let particle = ParticleAmplitudes::from_detection_probability(p1, 0.0).unwrap();

    let ready = cocked.canonical().value().clone();
    let mut starts: Vec<BigUint> = vec![ready.clone()];
    for flips in 1..=7usize {
        // Clear `flips` low-half ones (defect `flips` each).
        let mut v = ready.clone();
        for b in 0..flips {
            v.set_bit(3 * b as u64, false);
        }
        starts.push(v);
        // Additionally raise `flips` high-half zeros (defect `2·flips`).
        let mut w = ready.clone();
        for b in 0..flips {
            w.set_bit(3 * b as u64, false);
            w.set_bit(n as u64 - 1 - 5 * b as u64, true);
        }
        starts.push(w);
    }

    for value in starts {
        let start = BasisIndex::new(n, value).unwrap();
        assert!(cocked.contains(&start), "start must lie inside the budget");
        let result = time_average_spectral_from(particle, &config, &start).unwrap();
        assert!(result.s >= 1, "the start itself is a cocked orbit member");
        let bound = p1 * result.s as f64 / result.orbit_len as f64;
        assert!(
            (result.value - p1).abs() <= bound + 1e-15,
            "start defect {}: value {} strays past p1 ± {}",
            cocked.defect(&start),
            result.value,
            bound
        );
        // The vanishing fraction never exceeds (2·budget + 1)/n here: only
        // rotations by less than the budget can stay within it.
        assert!(result.s <= 2 * config.budget() + 1);
    }
}

#[test]
fn manifold_indicator_averages_to_one_regardless_of_the_particle() {
    // The counterexample observable: it matches the mass deficit on both
    // classical endpoints yet its time average carries no trace of p1 —
    // bit-for-bit identical across detection probabilities.
    let n = 11;
    let config = PointerConfig::new(n, BudgetRule::Zero).unwrap();
    let cocked = CockedSet::new(config);
    for steps in [(2 * n + 2) + 1, 41, 97] {
        // step counts coprime to n: no interior grid point is an integer
        assert!(steps % n != 0);
        let average = |p1: f64| {
            let particle = ParticleAmplitudes::from_detection_probability(p1, 0.0).unwrap();
            let state = CombinedState::product(particle, &cocked.canonical());
            trajectory_average(&state, &config, steps, PointerFamily::ManifoldIndicator).unwrap()
        };
        let reference = average(0.1);
        let expected = (steps as f64 - 1.0) / steps as f64;
        assert_eq!(reference.to_bits(), expected.to_bits());
        for p1 in [0.25, 0.5, 0.9, 1.0] {
            assert_eq!(average(p1).to_bits(), reference.to_bits(), "p1 = {p1}");
        }
        // ...while the mass deficit at those same step counts does depend
        // on p1, linearly.
        let deficit = |p1: f64| {
            let particle = ParticleAmplitudes::from_detection_probability(p1, 0.0).unwrap();
            let state = CombinedState::product(particle, &cocked.canonical());
            trajectory_average(&state, &config, steps, PointerFamily::MassDeficit).unwrap()
        };
        assert!((deficit(0.5) - 5.0 * deficit(0.1)).abs() <= 1e-12);
    }
}
