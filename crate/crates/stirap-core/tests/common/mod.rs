// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Shared helpers for the integration suites.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use stirap_core::linalg::Mat3;

/// Deterministic splitmix64 stream for reproducible "random" test inputs.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Null-space eigenvector oracle for a real symmetric 3×3 matrix with a
/// (near-)zero eigenvalue: the cross product of two rows of H - εI spans the
/// ε eigenspace; the largest of the three candidate cross products is the
/// numerically robust choice. Independent of the production dark-state
/// construction.
pub fn null_eigenvector_oracle(h: &Mat3, eigenvalue: f64) -> [f64; 3] {
    let mut shifted = [[0.0_f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            shifted[i][j] = h[i][j].re;
        }
        shifted[i][i] -= eigenvalue;
    }
    let cross = |a: &[f64; 3], b: &[f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let candidates = [
        cross(&shifted[0], &shifted[1]),
        cross(&shifted[0], &shifted[2]),
        cross(&shifted[1], &shifted[2]),
    ];
    let best = candidates
        .into_iter()
        .max_by(|a, b| {
            let na: f64 = a.iter().map(|x| x * x).sum();
            let nb: f64 = b.iter().map(|x| x * x).sum();
            na.partial_cmp(&nb).unwrap()
        })
        .unwrap();
    let norm = best.iter().map(|x| x * x).sum::<f64>().sqrt();
    [best[0] / norm, best[1] / norm, best[2] / norm]
}

/// |<a|b>| for a complex and a real vector.
pub fn overlap(a: &[C64; 3], b: &[f64; 3]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..3 {
        acc += a[i].conj() * b[i];
    }
    acc.norm()
}
