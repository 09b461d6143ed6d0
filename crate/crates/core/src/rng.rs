//! Seed derivation. Replicate-level RNGs are derived from the master seed
//! and the run coordinates so that any single replicate can be reproduced
//! without generating its predecessors.

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// SplitMix64 step; stable across platforms and releases.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix the master seed with run coordinates (e.g. snapshot day and replicate
/// index) into an independent stream seed.
pub fn derive_seed(master: u64, words: &[u64]) -> u64 {
    let mut state = master;
    let mut out = splitmix64(&mut state);
    for &w in words {
        state ^= w.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        out ^= splitmix64(&mut state);
    }
    out
}

/// The toolkit's seeded generator.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_seed_is_stable_and_sensitive() {
        let a = derive_seed(42, &[1, 2]);
        let b = derive_seed(42, &[1, 2]);
        assert_eq!(a, b);
        assert_ne!(a, derive_seed(42, &[2, 1]));
        assert_ne!(a, derive_seed(43, &[1, 2]));
    }
}
