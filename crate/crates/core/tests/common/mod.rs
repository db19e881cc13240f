#![allow(dead_code)]

use hermlab_core::algebra::{CMatrix, C64};
use hermlab_core::{MetricParams, SpaceParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn grid() -> Vec<SpaceParams> {
    let mut out = Vec::new();
    for n in 0..=3 {
        for p in 0..=3 {
            if let Ok(s) = SpaceParams::new(n, p) {
                out.push(s);
            }
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(a, c)` with `a ∈ (−5, 5)`, `c ∈ (0.05, 10)`.
pub fn random_metric(rng: &mut ChaCha8Rng) -> MetricParams {
    MetricParams::new(rng.random_range(-5.0..5.0), rng.random_range(0.05..10.0)).unwrap()
}

/// Moderate range used for curvature comparisons.
pub fn random_metric_moderate(rng: &mut ChaCha8Rng) -> MetricParams {
    MetricParams::new(rng.random_range(-2.0..2.0), rng.random_range(0.2..3.0)).unwrap()
}

pub fn unit(m: usize, r: usize, c: usize) -> CMatrix {
    let mut e = CMatrix::zeros(m, m);
    e[(r, c)] = C64::new(1.0, 0.0);
    e
}

pub fn i() -> C64 {
    C64::new(0.0, 1.0)
}
