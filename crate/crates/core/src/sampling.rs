//! Reproducible pseudorandom corpora for exact and numerical checks.

use rand::{Rng, SeedableRng};
use rand_pcg::Lcg64Xsh32;

use crate::exactfield::QF13;

/// Fixed-seed generator for test corpora: a 64-bit linear congruential
/// generator with a permuted 32-bit output (PCG32).
#[derive(Clone, Debug)]
pub struct Lcg {
    inner: Lcg64Xsh32,
}

impl Lcg {
    pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

    pub fn new(seed: u64) -> Self {
        Lcg {
            inner: Lcg64Xsh32::seed_from_u64(seed),
        }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.inner.gen()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.inner.gen_range(lo..=hi)
    }

    /// Uniform float in `[0, 1)`.
    pub fn unit_f64(&mut self) -> f64 {
        self.inner.gen()
    }

    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit_f64()
    }

    pub fn chance(&mut self, numer: u32, denom: u32) -> bool {
        self.inner.gen_ratio(numer, denom)
    }

    /// Rational `n/d` with `n` in `-max..=max` and `d` in `1..=max_den`.
    pub fn rational(&mut self, max: i64, max_den: i64) -> QF13 {
        let n = self.int_in(-max, max);
        let d = self.int_in(1, max_den);
        QF13::frac(n, d)
    }

    /// Strictly positive rational `n/d` with `n` in `1..=max`.
    pub fn positive_rational(&mut self, max: i64, max_den: i64) -> QF13 {
        let n = self.int_in(1, max);
        let d = self.int_in(1, max_den);
        QF13::frac(n, d)
    }

    /// Rational that is zero with probability `zero_numer / zero_denom`.
    pub fn sparse_rational(&mut self, max: i64, max_den: i64, zero_numer: u32, zero_denom: u32) -> QF13 {
        if self.chance(zero_numer, zero_denom) {
            QF13::frac(0, 1)
        } else {
            self.rational(max, max_den)
        }
    }
}

impl Default for Lcg {
    fn default() -> Self {
        Lcg::new(Self::DEFAULT_SEED)
    }
}
