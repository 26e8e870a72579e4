//! Seeding rules. Every random choice flows from a user seed through these.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for all trials.
pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` in a run seeded with `base`: `base + index`, wrapping.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}

/// Independent child seed for stream `stream` of `base` (SplitMix64 finalizer
/// applied to `base + (stream + 1) * golden_gamma`).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
