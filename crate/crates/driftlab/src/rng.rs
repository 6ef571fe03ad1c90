//! Deterministic RNG stream derivation.
//!
//! Every source of randomness in the crate is a ChaCha8 stream whose seed is
//! derived from a root seed, a string tag naming the purpose, and integer
//! indices (layer, candidate, image, ...). Identical inputs yield identical
//! streams on any host.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mix a root seed with a tag and indices into a single 64-bit sub-seed.
pub fn mix(seed: u64, tag: &str, parts: &[u64]) -> u64 {
    let mut acc = splitmix64(seed);
    for &b in tag.as_bytes() {
        acc = splitmix64(acc ^ u64::from(b));
    }
    for &p in parts {
        acc = splitmix64(acc ^ p);
    }
    acc
}

/// A dedicated ChaCha8 stream for one purpose.
pub fn stream(seed: u64, tag: &str, parts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, tag, parts))
}
