//! Seeded random streams.
//!
//! The whole toolkit uses one generator: ChaCha8 (`rand_chacha::ChaCha8Rng`),
//! keyed by a 64-bit seed with a 64-bit stream selector. Each stream is an
//! independent keystream, so agents can draw in any scheduling order without
//! perturbing each other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type RandomStream = ChaCha8Rng;

/// Returns the stream `stream_id` of the generator keyed by `seed`.
pub fn seeded_rng(seed: u64, stream_id: u64) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// What a stream is used for. Occupies the top byte of the stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum StreamKind {
    /// Initial placement of an agent.
    Init = 1,
    /// Per-agent draws in one generation.
    Agent = 2,
    /// Population-level draws in one generation (role assignment etc).
    Population = 3,
    /// Auxiliary draws outside the optimizer loop (data generation, folds).
    Aux = 4,
}

const ITER_BITS: u32 = 32;
const AGENT_BITS: u32 = 24;

/// Packs `(kind, iteration, agent)` into a unique stream id:
/// `kind << 56 | iteration << 24 | agent`.
pub fn stream_id(kind: StreamKind, iteration: u64, agent: u64) -> u64 {
    assert!(iteration < (1 << ITER_BITS), "iteration index out of range");
    assert!(agent < (1 << AGENT_BITS), "agent index out of range");
    ((kind as u64) << (ITER_BITS + AGENT_BITS)) | (iteration << AGENT_BITS) | agent
}
