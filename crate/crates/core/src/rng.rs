//! Seeded randomness helpers.
//!
//! All stochastic code in the crate draws from [`rand_core::RngCore`] through
//! these helpers so that a seed fully determines every trace.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// The generator used for every seeded run.
pub type SimRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[0, 1)` with 53 bits of precision.
pub fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw in `[lo, hi)`.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit_f64(rng)
}

/// Uniform integer in `lo..=hi`.
pub fn int_in<R: RngCore + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as usize
}

/// Index drawn from a discrete distribution given by `weights` (summing to ~1).
///
/// Falls back to the last index with positive mass when rounding leaves the
/// draw past the final cumulative weight.
pub fn categorical<R: RngCore + ?Sized>(rng: &mut R, weights: &[f64]) -> usize {
    let u = unit_f64(rng);
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last = i;
            acc += w;
            if u < acc {
                return i;
            }
        }
    }
    last
}

/// Point drawn uniformly from the probability simplex of dimension `n`.
pub fn simplex<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> alloc::vec::Vec<f64> {
    let mut draws: alloc::vec::Vec<f64> = (0..n)
        .map(|_| -libm::log(1.0 - unit_f64(rng)))
        .collect();
    let total: f64 = draws.iter().sum();
    for d in &mut draws {
        *d /= total;
    }
    draws
}
