//! Rotation orbits of the register basis.
//!
//! Left rotation permutes the `2^n` basis states. The two constant strings
//! are fixed; every other state belongs to a cycle whose length divides `n`.
//! For prime `n` every such cycle has length exactly `n` (a digit string
//! with period `d | n`, `d < n`, would have to be constant), so the
//! `2^n − 2` non-constant states split into exactly `q = (2^n − 2) / n`
//! orbits — the integrality of `q` is Fermat's little theorem in binary
//! clothing.
//!
//! Each orbit is stored in rotation order starting from its *canonical
//! representative*, the member with the smallest integer value. Orbits are
//! the invariant subspaces of the driven dynamics, so everything downstream
//! (evolution, time averages) works orbit-by-orbit.

use crate::basis::BasisIndex;
use num_bigint::BigUint;
use thiserror::Error;

/// Full enumeration is capped at this register width; the basis has `2^n`
/// states and the decomposition materialises all of them.
pub const DECOMPOSE_WIDTH_CAP: usize = 20;

/// Errors from orbit construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    /// Decomposition is only defined for prime widths, where all orbits
    /// have full length `n`.
    #[error("register width {0} is not prime")]
    NonPrimeN(usize),
    /// Full enumeration of `2^n` states was requested beyond the cap.
    #[error("width {n} exceeds the enumeration cap {cap}")]
    CapExceeded {
        /// Requested width.
        n: usize,
        /// Maximum width for full enumeration.
        cap: usize,
    },
    /// The constant strings `0` and `2^n − 1` do not generate an orbit.
    #[error("basis index {0} is a rotation fixed point")]
    FixedPointInput(BigUint),
}

/// One rotation cycle, in rotation order from the canonical (minimal-value)
/// representative: `members[k]` is `members[0]` rotated `k` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    members: Vec<BasisIndex>,
}

impl Orbit {
    /// Register width shared by all members.
    pub fn n(&self) -> usize {
        self.members[0].n()
    }

    /// Cycle length (equals `n` when `n` is prime).
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: an orbit has at least one member.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The minimal-value member, from which the listing starts.
    pub fn representative(&self) -> &BasisIndex {
        &self.members[0]
    }

    /// Members in rotation order from the representative.
    pub fn members(&self) -> &[BasisIndex] {
        &self.members
    }

    /// Position of `i` along the cycle (offset from the representative),
    /// or `None` if `i` lies on a different orbit.
    pub fn position_of(&self, i: &BasisIndex) -> Option<usize> {
        self.members.iter().position(|m| m == i)
    }
}

/// The orbit through `i`, built by walking rotations until the cycle closes.
///
/// Works for any width (the walk is `O(len)` big-integer operations, with
/// `len | n`); errors on the two fixed points, which generate no cycle.
pub fn orbit_of(i: &BasisIndex) -> Result<Orbit, OrbitError> {
    if i.is_fixed_point() {
        return Err(OrbitError::FixedPointInput(i.value().clone()));
    }
    let mut members = Vec::new();
    let mut walker = i.clone();
    let mut min_at = 0usize;
    loop {
        members.push(walker.clone());
        walker = walker.rotate();
        if walker == *i {
            break;
        }
        if walker.value() < members[min_at].value() {
            min_at = members.len(); // the value about to be pushed
        }
    }
    // Re-anchor the listing at the canonical representative.
    members.rotate_left(min_at);
    Ok(Orbit { members })
}

/// The orbit structure of the full width-`n` basis for prime `n`.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    n: usize,
    orbits: Vec<Orbit>,
    fixed_points: [BasisIndex; 2],
}

impl OrbitDecomposition {
    /// Register width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of length-`n` orbits, `q = (2^n − 2) / n`.
    pub fn q(&self) -> usize {
        self.orbits.len()
    }

    /// Orbits sorted by ascending representative value.
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// The two stationary states `0` and `2^n − 1`.
    pub fn fixed_points(&self) -> &[BasisIndex; 2] {
        &self.fixed_points
    }
}

/// Decomposes the width-`n` basis into rotation orbits.
///
/// Requires `n ≤ 20` (full `2^n` enumeration) and `n` prime (so that all
/// orbits have length `n` and `q = (2^n − 2) / n` is an integer). The cap is
/// checked first: a width that is both composite and over the cap reports
/// [`OrbitError::CapExceeded`].
pub fn decompose(n: usize) -> Result<OrbitDecomposition, OrbitError> {
    if n > DECOMPOSE_WIDTH_CAP {
        return Err(OrbitError::CapExceeded {
            n,
            cap: DECOMPOSE_WIDTH_CAP,
        });
    }
    if !is_prime(n) {
        return Err(OrbitError::NonPrimeN(n));
    }
    let size: u64 = 1 << n;
    let mask: u64 = size - 1;
    let mut visited = vec![false; size as usize];
    let mut orbits = Vec::with_capacity(((size - 2) / n as u64) as usize);
    for start in 1..mask {
        if visited[start as usize] {
            continue;
        }
        // The ascending scan meets each orbit first at its minimal value, so
        // `start` is already the canonical representative.
        let mut members = Vec::with_capacity(n);
        let mut v = start;
        loop {
            visited[v as usize] = true;
            members.push(BasisIndex::from_u64(n, v).expect("masked value fits width"));
            v = ((v << 1) & mask) | (v >> (n - 1));
            if v == start {
                break;
            }
        }
        debug_assert_eq!(members.len(), n, "prime width forces full-length orbits");
        orbits.push(Orbit { members });
    }
    Ok(OrbitDecomposition {
        n,
        orbits,
        fixed_points: [BasisIndex::zero(n), BasisIndex::all_ones(n)],
    })
}

/// Trial-division primality check; widths in this crate are small enough
/// that nothing cleverer is warranted.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: usize, v: u64) -> BasisIndex {
        BasisIndex::from_u64(n, v).unwrap()
    }

    fn values(orbit: &Orbit) -> Vec<u64> {
        orbit.members().iter().map(|m| m.to_u64().unwrap()).collect()
    }

    #[test]
    fn width_three_decomposition_is_exact() {
        let dec = decompose(3).unwrap();
        assert_eq!(dec.q(), 2);
        assert_eq!(values(&dec.orbits()[0]), vec![1, 2, 4]);
        assert_eq!(values(&dec.orbits()[1]), vec![3, 6, 5]);
        let fp: Vec<u64> = dec.fixed_points().iter().map(|f| f.to_u64().unwrap()).collect();
        assert_eq!(fp, vec![0, 7]);
    }

    #[test]
    fn width_five_orbit_of_seven() {
        let orbit = orbit_of(&idx(5, 7)).unwrap();
        assert_eq!(values(&orbit), vec![7, 14, 28, 25, 19]);
        assert_eq!(orbit.representative(), &idx(5, 7));
        assert_eq!(orbit.position_of(&idx(5, 25)), Some(3));
        assert_eq!(orbit.position_of(&idx(5, 3)), None);
    }

    #[test]
    fn orbit_listing_starts_at_minimal_member() {
        // Start the walk away from the minimum; the listing must re-anchor.
        let orbit = orbit_of(&idx(5, 28)).unwrap();
        assert_eq!(values(&orbit), vec![7, 14, 28, 25, 19]);
        // members[k] is the representative rotated k times.
        for (k, m) in orbit.members().iter().enumerate() {
            assert_eq!(m, &orbit.representative().rotate_by(k));
        }
    }

    #[test]
    fn orbit_count_matches_closed_form() {
        for n in [2usize, 3, 5, 7, 11, 13] {
            let dec = decompose(n).unwrap();
            let expected_q = ((1u64 << n) - 2) / n as u64;
            assert_eq!(dec.q() as u64, expected_q, "n = {n}");
            for orbit in dec.orbits() {
                assert_eq!(orbit.len(), n);
            }
            // Orbits plus fixed points partition the basis.
            let covered: usize = dec.orbits().iter().map(Orbit::len).sum::<usize>() + 2;
            assert_eq!(covered as u64, 1 << n);
        }
    }

    #[test]
    fn representatives_are_sorted_and_minimal() {
        let dec = decompose(7).unwrap();
        let reps: Vec<u64> = dec
            .orbits()
            .iter()
            .map(|o| o.representative().to_u64().unwrap())
            .collect();
        let mut sorted = reps.clone();
        sorted.sort_unstable();
        assert_eq!(reps, sorted);
        for orbit in dec.orbits() {
            let min = orbit.members().iter().map(|m| m.to_u64().unwrap()).min();
            assert_eq!(Some(orbit.representative().to_u64().unwrap()), min);
        }
    }

    #[test]
    fn composite_and_oversized_widths_are_rejected() {
        assert!(matches!(decompose(4), Err(OrbitError::NonPrimeN(4))));
        assert!(matches!(decompose(9), Err(OrbitError::NonPrimeN(9))));
        assert!(matches!(decompose(1), Err(OrbitError::NonPrimeN(1))));
        assert!(matches!(
            decompose(23),
            Err(OrbitError::CapExceeded { n: 23, cap: 20 })
        ));
        // Cap is checked before primality.
        assert!(matches!(
            decompose(21),
            Err(OrbitError::CapExceeded { n: 21, cap: 20 })
        ));
    }

    #[test]
    fn fixed_points_generate_no_orbit() {
        assert!(matches!(
            orbit_of(&BasisIndex::zero(5)),
            Err(OrbitError::FixedPointInput(_))
        ));
        assert!(matches!(
            orbit_of(&BasisIndex::all_ones(5)),
            Err(OrbitError::FixedPointInput(_))
        ));
    }

    #[test]
    fn orbit_walk_handles_wide_registers() {
        let n = 501; // composite on purpose: the walk itself is width-agnostic
        let i = idx(n, 0b1011);
        let orbit = orbit_of(&i).unwrap();
        assert_eq!(orbit.len(), n);
        assert_eq!(orbit.representative().to_u64(), Some(0b1011));
    }

    #[test]
    fn composite_widths_can_have_short_orbits() {
        // 0b0101 at n = 4 has period 2, not 4.
        let orbit = orbit_of(&idx(4, 0b0101)).unwrap();
        assert_eq!(values(&orbit), vec![5, 10]);
    }

    #[test]
    fn primality_helper() {
        let primes: Vec<usize> = (0..25).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23]);
        assert!(is_prime(10007));
        assert!(!is_prime(10005));
    }
}
