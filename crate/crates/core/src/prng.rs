// SPDX-License-Identifier: Apache-2.0

//! Deterministic pseudo-random numbers for gallery generation and tests.
//!
//! The generator is pinned so that galleries are reproducible everywhere,
//! independent of platform or library versions: a `splitmix64` seed scrambler
//! feeding an `xorshift64*` shift register. Uniform doubles take the top 53
//! bits of each 64-bit word.

/// Identifier recorded in experiment metadata.
pub const PRNG_ID: &str = "xorshift64star";

/// xorshift64* with splitmix64 seeding.
#[derive(Debug, Clone)]
pub struct Xorshift64Star {
    state: u64,
}

impl Xorshift64Star {
    pub fn new(seed: u64) -> Self {
        // splitmix64 scramble; keeps the state nonzero for any seed.
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        if z == 0 {
            z = 0x9E37_79B9_7F4A_7C15;
        }
        Xorshift64Star { state: z }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-1, 1).
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}
