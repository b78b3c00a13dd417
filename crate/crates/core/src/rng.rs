//! Thin deterministic RNG helpers over ChaCha8.

use rand_core::RngCore;

pub(crate) type Rng = rand_chacha::ChaCha8Rng;

pub(crate) fn seeded(seed: u64) -> Rng {
    use rand_core::SeedableRng;
    Rng::seed_from_u64(seed)
}

/// Uniform f64 in [0, 1) with 53 random bits.
pub(crate) fn next_f64(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform usize in [0, n). Uses rejection sampling to avoid modulo bias.
pub(crate) fn next_index(rng: &mut Rng, n: usize) -> usize {
    debug_assert!(n > 0);
    let n = n as u64;
    let zone = u64::MAX - (u64::MAX % n);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return (v % n) as usize;
        }
    }
}
