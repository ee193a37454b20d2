//! Portable seeded randomness.
//!
//! Every random choice in the crate is drawn from SplitMix64 (Vigna's
//! reference `splitmix64.c`: add `0x9e3779b97f4a7c15` to the state, then the
//! `(z ^ z>>30)*0xbf58476d1ce4e5b9`, `(z ^ z>>27)*0x94d049bb133111eb`,
//! `z ^ z>>31` finalizer). Uniform reals are `(next_u64() >> 11) * 2^-53`, so
//! a seed reproduces the same stream on every platform.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Debug)]
pub struct Rng64(SplitMix64);

impl Rng64 {
    pub fn new(seed: u64) -> Self {
        Rng64(SplitMix64::seed_from_u64(seed))
    }

    /// Independent stream number `index` derived from `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        let mut base = SplitMix64::seed_from_u64(seed ^ index.wrapping_mul(GOLDEN).rotate_left(17));
        Rng64::new(base.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference_splitmix() {
        // First outputs of splitmix64.c seeded with 0.
        let mut r = Rng64::new(0);
        assert_eq!(r.next_u64(), 0xe220_a839_7b1d_cdaf);
        assert_eq!(r.next_u64(), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn unit_interval() {
        let mut r = Rng64::new(7);
        for _ in 0..1000 {
            let x = r.next_f64();
            assert!((0.0..1.0).contains(&x));
            assert!(r.below(5) < 5);
        }
    }
}
