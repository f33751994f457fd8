//! Basis indices of the n-qubit register.
//!
//! A register basis state is written `|d_{n-1} d_{n-2} … d_1 d_0⟩` and
//! identified with the integer `Σ d_k 2^k`, so the digit string is the
//! ordinary binary expansion. Widths up to at least `n = 10007` are
//! supported, hence values are held as big integers rather than machine
//! words.
//!
//! The distinguished dynamics acts on basis states by rotating the digit
//! string one place to the left, `d_{n-1} d_{n-2} … d_0 ↦ d_{n-2} … d_0
//! d_{n-1}`, which on integers is doubling modulo `2^n − 1` (with the
//! convention that the all-ones value `2^n − 1` maps to itself rather than
//! to 0): doubling shifts every digit up and the wrapped top digit pays back
//! exactly `2^n − 1`. The two constant strings `0` and `2^n − 1` are the
//! fixed points; everything else moves.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Errors from [`BasisIndex`] construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    /// The register must have at least one site.
    #[error("register width must be at least 1")]
    WidthZero,
    /// The value does not fit in `n` binary digits.
    #[error("value has more than {n} binary digits")]
    OutOfRange {
        /// Register width that was violated.
        n: usize,
    },
}

/// A basis state of the width-`n` register, stored as the integer whose
/// binary expansion is the digit string.
///
/// Ordering compares widths first and values second, so the minimum of an
/// orbit (all members share a width) is the member with the smallest integer
/// value — the canonical representative used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    n: usize,
    value: BigUint,
}

impl BasisIndex {
    /// Wraps `value` as a width-`n` basis index.
    pub fn new(n: usize, value: BigUint) -> Result<Self, IndexError> {
        if n == 0 {
            return Err(IndexError::WidthZero);
        }
        if value.bits() > n as u64 {
            return Err(IndexError::OutOfRange { n });
        }
        Ok(Self { n, value })
    }

    /// Convenience constructor from a machine word.
    pub fn from_u64(n: usize, value: u64) -> Result<Self, IndexError> {
        Self::new(n, BigUint::from(value))
    }

    /// The all-zeros string (quiescent register).
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            value: BigUint::zero(),
        }
    }

    /// The all-ones string `2^n − 1`.
    pub fn all_ones(n: usize) -> Self {
        Self {
            n,
            value: (BigUint::one() << n) - BigUint::one(),
        }
    }

    /// Register width.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The integer value of the digit string.
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// The value as a machine word, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.value).ok()
    }

    /// Digit `d_k` (bit `k`) of the string.
    pub fn bit(&self, k: usize) -> bool {
        self.value.bit(k as u64)
    }

    /// Number of 1-digits. Conserved by rotation.
    pub fn popcount(&self) -> u64 {
        self.value.count_ones()
    }

    /// Whether this is one of the two rotation fixed points (`0` or
    /// `2^n − 1`).
    pub fn is_fixed_point(&self) -> bool {
        self.value.is_zero() || self.popcount() == self.n as u64
    }

    /// One left rotation of the digit string: doubling modulo `2^n − 1`.
    pub fn rotate(&self) -> Self {
        self.rotate_by(1)
    }

    /// `k` left rotations in one shot (`k` is reduced modulo `n`).
    pub fn rotate_by(&self, k: usize) -> Self {
        let k = k % self.n;
        if k == 0 {
            return self.clone();
        }
        let mask = (BigUint::one() << self.n) - BigUint::one();
        let rotated = ((&self.value << k) & mask) | (&self.value >> (self.n - k));
        Self {
            n: self.n,
            value: rotated,
        }
    }

    /// The digit string, most significant digit first (debug/display aid).
    pub fn bits_string(&self) -> String {
        (0..self.n)
            .rev()
            .map(|k| if self.bit(k) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
