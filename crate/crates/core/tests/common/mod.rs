//! Independent dense oracles for the integration tests.
//!
//! Everything here is deliberately written from scratch on plain nested
//! `Vec`s — no shared code with the library's dense module, no FFT crate —
//! so that an agreement between the fast path and these oracles actually
//! means something.

#![allow(dead_code)] // each integration test binary uses its own subset

use num_complex::Complex64;
use std::f64::consts::PI;

pub type Mat = Vec<Vec<Complex64>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for r in 0..n {
        for k in 0..n {
            let ark = a[r][k];
            for c in 0..n {
                out[r][c] += ark * b[k][c];
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

pub fn scale(a: &Mat, factor: Complex64) -> Mat {
    a.iter()
        .map(|row| row.iter().map(|z| z * factor).collect())
        .collect()
}

/// Scaling-and-squaring Taylor exponential, oracle edition.
pub fn taylor_expm(a: &Mat) -> Mat {
    let n = a.len();
    let inf_norm = a
        .iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if inf_norm <= 0.5 {
        0u32
    } else {
        (inf_norm / 0.5).log2().ceil() as u32
    };
    let b = scale(a, Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0));

    let mut result = eye(n);
    let mut term = eye(n);
    for j in 1..=24 {
        term = matmul(&term, &b);
        term = scale(&term, Complex64::new(1.0 / j as f64, 0.0));
        for r in 0..n {
            for c in 0..n {
                result[r][c] += term[r][c];
            }
        }
    }
    let mut out = result;
    for _ in 0..squarings {
        out = matmul(&out, &out);
    }
    out
}

/// The flow matrix straight from the Fourier sum:
/// `U(t)[m, j] = (1/n) Σ_k exp(2πi·k·(j − m + t)/n)`.
pub fn dft_flow(n: usize, t: f64) -> Mat {
    let mut u = zeros(n);
    for (m, row) in u.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let shift = j as f64 - m as f64 + t;
            let sum: Complex64 = (0..n)
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 * shift / n as f64))
                .sum();
            *entry = sum / n as f64;
        }
    }
    u
}

/// The one-step cycle on positions, `P e_j = e_{j+1 mod n}`.
pub fn cycle(n: usize) -> Mat {
    let mut p = zeros(n);
    for j in 0..n {
        p[(j + 1) % n][j] = Complex64::new(1.0, 0.0);
    }
    p
}

pub fn max_mat_dev(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_vec_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
