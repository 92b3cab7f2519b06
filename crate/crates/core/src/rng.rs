//! Counter-based sample streams.
//!
//! Sample `i` of a run with seed `s` draws from ChaCha8 keyed by `s` (expanded
//! with `SeedableRng::seed_from_u64`) on stream `i`, starting at word 0. Any
//! worker can therefore regenerate sample `i` on its own, and results never
//! depend on how the index range is partitioned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub(crate) fn unit(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen::<f64>()
}
