//! Deterministic random substreams.
//!
//! Every unit of parallel work gets its own ChaCha8 stream derived from the
//! master seed, a purpose tag and the chunk index. Work is split into chunks
//! of fixed size before it is handed to rayon, so the hit count does not
//! depend on how many workers run the chunks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DOMAIN: &[u8; 16] = b"hsgas/substream\0";

/// Purpose tag for sampler moment checks, kept disjoint from the
/// `(d << 32) | k` tags used by the estimator.
pub const TAG_SAMPLER: u64 = u64::MAX;

/// Tag identifying a g̃ estimation run for dimension `d` and `k` points.
pub fn estimation_tag(d: usize, k: usize) -> u64 {
    ((d as u64) << 32) | (k as u64 & 0xffff_ffff)
}

/// Independent stream for `(master_seed, tag, chunk)`.
pub fn substream(master_seed: u64, tag: u64, chunk: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&tag.to_le_bytes());
    seed[16..].copy_from_slice(DOMAIN);
    let mut rng = ChaCha8Rng::from_seed(seed);
    rng.set_stream(chunk);
    rng
}

/// Sizes of the fixed chunks covering `total` draws.
pub fn chunk_lengths(total: u64, chunk_size: u64) -> impl Iterator<Item = (u64, u64)> {
    let chunks = total.div_ceil(chunk_size);
    (0..chunks).map(move |i| {
        let start = i * chunk_size;
        (i, chunk_size.min(total - start))
    })
}
