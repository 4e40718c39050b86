//! Seeded sampling with a fixed, portable algorithm.
//!
//! The stream is SplitMix64 (Steele, Lea and Flood) started from the raw
//! seed. A value uniform in `[0, n)` is drawn by rejection: a 64-bit output
//! `x` is accepted when `x < 2^64 - (2^64 mod n)` and mapped to `x mod n`.
//! Both steps are simple enough to reproduce in any language, so sweeps are
//! replicable from `(seed, config)` alone.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        // 2^64 mod n; accept x <= 2^64 - 1 - rem
        let rem = (u64::MAX % n + 1) % n;
        let last = u64::MAX - rem;
        loop {
            let x = self.rng.next_u64();
            if x <= last {
                return x % n;
            }
        }
    }

    /// Uniform in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        if lo == 0 && hi == u64::MAX {
            return self.next_u64();
        }
        lo + self.below(hi - lo + 1)
    }
}
