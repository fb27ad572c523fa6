//! Seeded, counter-based random streams.
//!
//! Every stochastic routine draws from `stream(seed, index)`, where `index`
//! identifies the work item (sample, trial, restart). Results therefore do
//! not depend on thread count or scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type StreamRng = ChaCha20Rng;

pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Stream for a work item inside a named experiment, so that e.g. sample 3
/// and trial 3 under the same seed do not share randomness.
pub fn tagged_stream(seed: u64, tag: u64, index: u64) -> StreamRng {
    stream(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15), index)
}

pub const TAG_HAAR: u64 = 1;
pub const TAG_NOISE: u64 = 2;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = stream(7, 0).random();
        let b: u64 = stream(7, 0).random();
        let c: u64 = stream(7, 1).random();
        let e: u64 = tagged_stream(7, TAG_NOISE, 0).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, e);
    }
}
