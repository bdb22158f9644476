//! Seeded random numbers with a pinned bit-for-bit contract.
//!
//! Hiding and revealing must regenerate identical frozen weights from the
//! same seed, potentially years apart and on different machines, so every
//! step from `u64` seed to `f32` sample is spelled out here rather than
//! delegated to library defaults that might drift across versions:
//!
//! 1. the seed is expanded to 32 bytes by four rounds of SplitMix64;
//! 2. the byte block keys a ChaCha8 stream;
//! 3. each `f32` takes the top 24 bits of one ChaCha word, divided by 2²⁴.
//!
//! Both `(2²⁴ − 1)` and `2²⁴` are exactly representable in `f32` and the
//! division is by a power of two, so `uniform()` lands exactly on the grid
//! `{0, 1/2²⁴, …, (2²⁴−1)/2²⁴}` and never rounds up to 1.0.
//!
//! [`PRNG_ALGORITHM_ID`] names this exact pipeline. It is recorded in every
//! key file; a key naming any other algorithm is rejected rather than risk
//! decoding garbage.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifier for the seed-expansion / stream / float-mapping pipeline
/// implemented by [`SeededRng`]. Bump the suffix if any stage ever changes.
pub const PRNG_ALGORITHM_ID: &str = "splitmix64/chacha8/top24-v1";

/// One SplitMix64 step: advances `state` and returns the mixed output.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator used for weight init, bias phases, and batch
/// shuffling. See the module docs for the pinned pipeline.
pub struct SeededRng {
    stream: ChaCha8Rng,
}

impl SeededRng {
    /// Builds the generator for `seed`.
    pub fn new(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        SeededRng { stream: ChaCha8Rng::from_seed(key) }
    }

    /// Next raw 32-bit word from the stream.
    pub fn next_u32(&mut self) -> u32 {
        self.stream.next_u32()
    }

    /// Uniform sample on `[0, 1)` with 24-bit resolution.
    #[inline]
    pub fn uniform(&mut self) -> f32 {
        (self.next_u32() >> 8) as f32 / 16_777_216.0
    }

    /// Uniform sample on `[lo, hi)` (the upper end can be attained only
    /// through rounding when the interval is much larger than its endpoints'
    /// spacing; callers here use it for init ranges where that is harmless).
    #[inline]
    pub fn uniform_in(&mut self, lo: f32, hi: f32) -> f32 {
        lo + self.uniform() * (hi - lo)
    }

    /// Fills `out` with uniform samples on `[lo, hi)`, in index order.
    pub fn uniform_fill(&mut self, out: &mut [f32], lo: f32, hi: f32) {
        for slot in out.iter_mut() {
            *slot = self.uniform_in(lo, hi);
        }
    }

    /// Uniform integer in `[0, n)` by widening multiply. The modulo bias is
    /// below `n / 2³²`, irrelevant at the sizes used here, and the arithmetic
    /// is pinned (no rejection loop whose iteration count could vary).
    pub fn below(&mut self, n: u32) -> u32 {
        ((u64::from(self.next_u32()) * u64::from(n)) >> 32) as u32
    }

    /// In-place Fisher–Yates shuffle, swapping from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u32 + 1) as usize;
            items.swap(i, j);
        }
    }
}
