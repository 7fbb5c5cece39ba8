//! SplitMix64, the single PRNG used for synthetic covers, seeded pixel
//! permutations and generated messages.
//!
//! The generator is fixed so that any implementation reproduces the same
//! streams:
//!
//! ```text
//! state  = state + 0x9E3779B97F4A7C15            (mod 2^64)
//! z      = state
//! z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2^64)
//! z      = (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2^64)
//! output = z ^ (z >> 31)
//! ```
//!
//! Bounded draws use the high half of a 128-bit product,
//! `below(n) = (next_u64() * n) >> 64`. Not cryptographically secure.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..n`. `n` must be non-zero.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Top bit of the next output.
    pub fn next_bit(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}
