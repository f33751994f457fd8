//! Macroscopicity of the pointer: microscopic prefixes don't matter.
//!
//! A pointer worth the name must read the same on every apparatus state
//! that differs only in microscopic detail. This module evaluates a pointer
//! family on growing product states
//!
//! ```text
//! w_N = (prefix on the first m sites) ⊗ v ⊗ v ⊗ … ⊗ v      (N sites total)
//! ```
//!
//! and reports the spread of the readings across a set of prefixes and a
//! grid of widths. Because the defect count of a basis string is a sum of
//! independent per-site indicators under a product measure, the cocked mass
//! `P[defects ≤ budget]` is a truncated convolution: enumerate the prefix's
//! `2^m` branches once, then fold in one Bernoulli defect per tail site
//! (`|v(0)|²` on low sites, which want a 1; `|v(1)|²` on high sites, which
//! want a 0) in `O(N · budget)` time.
//!
//! For any fixed tail the per-site defect probability is bounded away from
//! zero on at least one half of the register, so the number of defects
//! outruns every sublinear budget and the reading converges to 1 for *all*
//! prefixes — the spread collapses, which is exactly the macroscopicity
//! being checked.

use crate::pointer::{BudgetRule, PointerConfig, PointerError, PointerFamily};
use num_complex::Complex64;

/// Spread across prefixes/widths must stay below this for a PASS verdict.
pub const MACRO_SPREAD_TOLERANCE: f64 = 1e-3;

/// The repeated single-site factor of the product state, `v(0)|0⟩ + v(1)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailState {
    amp0: Complex64,
    amp1: Complex64,
}

impl TailState {
    /// A unit-norm single-site state (within 1e−9).
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self, PointerError> {
        let norm = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if !((norm - 1.0).abs() <= 1e-9) {
            return Err(PointerError::NotNormalized { norm });
        }
        Ok(Self { amp0, amp1 })
    }

    /// `|0⟩` on every tail site.
    pub fn ground() -> Self {
        Self {
            amp0: Complex64::new(1.0, 0.0),
            amp1: Complex64::new(0.0, 0.0),
        }
    }

    /// `|1⟩` on every tail site.
    pub fn excited() -> Self {
        Self {
            amp0: Complex64::new(0.0, 0.0),
            amp1: Complex64::new(1.0, 0.0),
        }
    }

    /// The balanced superposition `(|0⟩ + |1⟩)/√2` on every tail site.
    pub fn plus() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amp0: Complex64::new(r, 0.0),
            amp1: Complex64::new(r, 0.0),
        }
    }

    /// Probability a tail site on the low (wants-1) half reads 0.
    pub fn defect_probability_low(&self) -> f64 {
        self.amp0.norm_sqr()
    }

    /// Probability a tail site on the high (wants-0) half reads 1.
    pub fn defect_probability_high(&self) -> f64 {
        self.amp1.norm_sqr()
    }
}

/// A microscopic prefix: an arbitrary state on the first `m` sites
/// (amplitudes indexed by the `2^m` bit patterns of those sites). Prefixes
/// sit inside the low half of the ready pattern, so `m` must not exceed
/// `⌈n/2⌉` for any width in the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Prefix {
    label: String,
    sites: usize,
    amps: Vec<Complex64>,
}

impl Prefix {
    /// A prefix over `sites` sites with `2^sites` unit-norm amplitudes.
    pub fn new(
        label: impl Into<String>,
        sites: usize,
        amps: Vec<Complex64>,
    ) -> Result<Self, PointerError> {
        let expected = 1usize << sites;
        if amps.len() != expected {
            return Err(PointerError::PrefixShape {
                expected,
                found: amps.len(),
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= 1e-9) {
            return Err(PointerError::NotNormalized { norm });
        }
        Ok(Self {
            label: label.into(),
            sites,
            amps,
        })
    }

    /// A basis-pattern prefix, e.g. `|11⟩` for `pattern = 0b11`.
    pub fn basis(label: impl Into<String>, sites: usize, pattern: u64) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << sites];
        amps[pattern as usize] = Complex64::new(1.0, 0.0);
        Self {
            label: label.into(),
            sites,
            amps,
        }
    }

    /// A single site prepared exactly like the tail — the trivial prefix.
    pub fn matching_tail(label: impl Into<String>, tail: &TailState) -> Self {
        Self {
            label: label.into(),
            sites: 1,
            amps: vec![
                Complex64::new(tail.defect_probability_low().sqrt(), 0.0) * phase_of(tail.amp0),
                Complex64::new(tail.defect_probability_high().sqrt(), 0.0) * phase_of(tail.amp1),
            ],
        }
    }

    /// Display label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of sites covered.
    pub fn sites(&self) -> usize {
        self.sites
    }
}

fn phase_of(z: Complex64) -> Complex64 {
    if z.norm_sqr() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / z.norm()
    }
}

/// A stock set of prefixes exercising the interesting cases: a fragment of
/// the ready pattern, a scrambled fragment, an entangled fragment, and a
/// site identical to the tail.
pub fn standard_prefixes(tail: &TailState) -> Vec<Prefix> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        Prefix::basis("ready-fragment", 2, 0b11),
        Prefix::basis("flipped-fragment", 2, 0b01),
        Prefix::new(
            "entangled-fragment",
            2,
            vec![
                Complex64::new(r, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(r, 0.0),
            ],
        )
        .expect("stock prefix is normalised"),
        Prefix::matching_tail("tail-site", tail),
    ]
}

/// One evaluated (prefix, width) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixRow {
    /// Prefix label.
    pub label: String,
    /// Register width.
    pub n: usize,
    /// Pointer-family reading on the product state.
    pub value: f64,
}

/// Outcome of a macroscopicity check.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroscopicReport {
    /// Which pointer family was evaluated.
    pub family: PointerFamily,
    /// All (prefix, width) readings.
    pub rows: Vec<PrefixRow>,
    /// `max − min` of the readings.
    pub spread: f64,
    /// The PASS threshold ([`MACRO_SPREAD_TOLERANCE`]).
    pub tolerance: f64,
    /// Whether the spread stayed below the threshold.
    pub pass: bool,
}

/// Evaluates a pointer family on `prefix ⊗ tail^⊗…` product states over a
/// width grid and reports the spread of the readings.
pub fn macroscopic_check(
    prefixes: &[Prefix],
    tail: &TailState,
    n_grid: &[usize],
    rule: BudgetRule,
    family: PointerFamily,
) -> Result<MacroscopicReport, PointerError> {
    let mut rows = Vec::with_capacity(prefixes.len() * n_grid.len());
    for &n in n_grid {
        let config = PointerConfig::new(n, rule)?;
        for prefix in prefixes {
            let mass = product_cocked_mass(prefix, tail, &config)?;
            rows.push(PrefixRow {
                label: prefix.label.clone(),
                n,
                value: family.evaluate(mass),
            });
        }
    }
    let max = rows.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let min = rows.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
    let spread = if rows.is_empty() { 0.0 } else { max - min };
    Ok(MacroscopicReport {
        family,
        rows,
        spread,
        tolerance: MACRO_SPREAD_TOLERANCE,
        pass: spread < MACRO_SPREAD_TOLERANCE,
    })
}

/// `P[defect count ≤ budget]` for `prefix ⊗ tail^⊗(n − m)` by truncated
/// convolution over sites.
fn product_cocked_mass(
    prefix: &Prefix,
    tail: &TailState,
    config: &PointerConfig,
) -> Result<f64, PointerError> {
    let half = config.half();
    let m = prefix.sites;
    if m > half {
        return Err(PointerError::PrefixTooWide { sites: m, half });
    }
    let budget = config.budget() as usize;

    // Defect distribution of the prefix branches (prefix sites are low
    // sites, so each 0-digit is a defect); mass beyond the budget can never
    // come back and is dropped for good.
    let mut dist = vec![0.0f64; budget + 1];
    for (pattern, amp) in prefix.amps.iter().enumerate() {
        let weight = amp.norm_sqr();
        if weight == 0.0 {
            continue;
        }
        let zeros = m - (pattern as u64).count_ones() as usize;
        if zeros <= budget {
            dist[zeros] += weight;
        }
    }

    let fold_sites = |dist: &mut Vec<f64>, count: usize, q: f64| {
        for _ in 0..count {
            for j in (0..=budget).rev() {
                let carried = if j > 0 { dist[j - 1] * q } else { 0.0 };
                dist[j] = dist[j] * (1.0 - q) + carried;
            }
        }
    };
    fold_sites(&mut dist, half - m, tail.defect_probability_low());
    fold_sites(&mut dist, config.n() - half, tail.defect_probability_high());

    Ok(dist.iter().sum())
}
