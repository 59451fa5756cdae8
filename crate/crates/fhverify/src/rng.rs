//! Seeded, counter-addressable random streams.
//!
//! The verifier derives one independent ChaCha stream per sample index from a
//! single master seed. Aggregates computed from indexed streams are the same
//! for any partitioning of the index range across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The per-index stream for a master seed: stream `index` of the ChaCha
/// keystream keyed by `seed`.
pub fn indexed_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A plain seeded stream (stream 0), for single-consumer sampling such as
/// the prover's measurement draws.
pub fn master_stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
