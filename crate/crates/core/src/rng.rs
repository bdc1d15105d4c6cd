//! Seeded randomness.
//!
//! Every random choice in the crate is drawn from ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`. Independent streams for per-vertex or
//! per-trial work are obtained with [`stream`], which keeps the seed and
//! selects a distinct ChaCha stream id, so results do not depend on the order
//! in which the streams are consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn stream(seed: u64, id: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}
