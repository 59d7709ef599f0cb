//! Deterministic low-discrepancy sample points.
//!
//! Points come from a Halton sequence shifted by a seed-derived random offset
//! (Cranley–Patterson rotation) and mapped into a box.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const PRIMES: [u32; 24] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub lo: f64,
    pub hi: f64,
}

impl Default for SampleBox {
    fn default() -> Self {
        Self { lo: -1.0, hi: 1.0 }
    }
}

impl SampleBox {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }
}

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut acc = 0.0;
    while i > 0 {
        acc += (i % base as u64) as f64 * inv;
        i /= base as u64;
        inv /= b;
    }
    acc
}

/// `count` points of dimension `dim` (at most 24) in `bx`.
pub fn sample_points(dim: usize, count: usize, seed: u64, bx: SampleBox) -> Vec<Vec<f64>> {
    assert!(dim <= PRIMES.len(), "sampling supports at most {} dimensions", PRIMES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    (1..=count as u64)
        .map(|i| {
            (0..dim)
                .map(|d| {
                    let u = (radical_inverse(i, PRIMES[d]) + shift[d]).fract();
                    bx.lo + (bx.hi - bx.lo) * u
                })
                .collect()
        })
        .collect()
}
