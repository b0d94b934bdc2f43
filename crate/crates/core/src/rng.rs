//! Seeded, splittable random streams.
//!
//! Every experiment takes a single 64-bit seed. Independent tasks (samples,
//! restarts, Monte-Carlo chunks) draw from `task_rng(seed, task)`, which
//! selects a distinct ChaCha stream, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TaskRng = ChaCha8Rng;

/// Random stream number `task` under the experiment seed `seed`.
pub fn task_rng(seed: u64, task: u64) -> TaskRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(task);
    rng
}

/// Derive a child seed from a parent seed and a label (splitmix64 finalizer).
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    let mut z = seed ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed derived from the bit pattern of a real vector, used to give each
/// support direction its own reproducible stream.
pub fn seed_from_reals(seed: u64, values: &[f64]) -> u64 {
    values
        .iter()
        .fold(seed, |acc, v| derive_seed(acc, v.to_bits()))
}
