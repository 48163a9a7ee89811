//! Seeded randomness helpers. Every randomized operation in the library
//! takes an explicit `u64` seed and derives a ChaCha stream from it, so runs
//! are reproducible byte-for-byte.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Widening spread for rational sampling: early attempts draw small numbers
/// (readable reports), later attempts widen the pool so rejection loops make
/// progress.
pub fn spread_for_attempt(attempt: usize) -> u64 {
    4 + (attempt as u64) / 8
}
