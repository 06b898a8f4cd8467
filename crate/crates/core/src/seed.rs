//! Deterministic derivation of RNG sub-streams.
//!
//! Every randomized operation takes an explicit seed and derives child seeds
//! by hashing the parent seed together with a textual tag (and optionally an
//! index). Outputs therefore depend only on `(seed, key)` and never on
//! processing order, thread scheduling, or batch composition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(mut state: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        state ^= u64::from(b);
        state = state.wrapping_mul(FNV_PRIME);
    }
    state
}

/// Derive a child seed from a parent seed and a tag.
pub fn derive(seed: u64, tag: &str) -> u64 {
    let state = fnv1a(FNV_OFFSET, &seed.to_le_bytes());
    fnv1a(state, tag.as_bytes())
}

/// Derive a child seed from a parent seed, a tag, and an index.
pub fn derive_indexed(seed: u64, tag: &str, index: u64) -> u64 {
    fnv1a(derive(seed, tag), &index.to_le_bytes())
}

/// Instantiate the stream RNG for a derived seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
