//! Seeded pseudo-random generation for reproducible checks.
//!
//! Every randomized routine in the crate draws from this one generator so
//! that identical seeds produce identical reports, independent of platform
//! and of any third-party RNG's version history. The core is splitmix64.

use crate::linalg::Rational;

/// A tiny deterministic generator (splitmix64).
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // Modulo bias is irrelevant here: bounds are tiny against 2^64.
        self.next_u64() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small rational from `{-5,...,5}`, kept integral so repeated exact
    /// arithmetic stays cheap.
    pub fn small_rational(&mut self) -> Rational {
        Rational::from_int(self.int_in(-5, 5))
    }

    /// Small nonzero integer rational.
    pub fn small_nonzero(&mut self) -> Rational {
        loop {
            let r = self.small_rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// Derives an independent child generator; used to keep subsystems
    /// insensitive to each other's draw counts.
    pub fn fork(&mut self, tag: u64) -> Rng {
        Rng::new(self.next_u64() ^ tag.wrapping_mul(0xA24BAED4963EE407))
    }
}
