//! Deterministic parallel helpers.
//!
//! All randomized work in this crate is split into fixed-size chunks, each
//! driven by an RNG stream derived from (seed, chunk index). Chunk results
//! are merged in chunk order, so the outcome is a pure function of the seed
//! and is independent of the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// RNG for one chunk of work. Streams are disjoint per chunk index.
pub(crate) fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk.wrapping_add(1));
    rng
}

/// Derive a sub-seed for an independent stage of an estimator (e.g. the cut
/// enumeration seed vs. the DNF sampling seed). SplitMix64 finalizer.
pub(crate) fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Map chunk indices to results in parallel; the returned Vec is in chunk
/// order regardless of scheduling.
pub(crate) fn map_chunks<T: Send>(chunks: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..chunks).into_par_iter().map(f).collect()
}

/// Run chunked trials until either `target_hits` is reached at a chunk
/// boundary or all `total_trials` have been consumed. Returns (hits, trials).
///
/// Chunks are evaluated speculatively in waves but consumed strictly in
/// order, so the stopping point depends only on the per-chunk outcomes.
pub(crate) fn stopped_trial_count(
    seed: u64,
    total_trials: u64,
    chunk_size: u64,
    target_hits: u64,
    trial: impl Fn(&mut ChaCha8Rng) -> bool + Sync + Send,
) -> (u64, u64) {
    assert!(chunk_size > 0);
    let chunks = total_trials.div_ceil(chunk_size);
    let wave = (rayon::current_num_threads() as u64 * 2).max(1);
    let mut hits = 0u64;
    let mut trials = 0u64;
    let mut next = 0u64;
    while next < chunks {
        let end = (next + wave).min(chunks);
        let batch: Vec<(u64, u64)> = (next..end)
            .into_par_iter()
            .map(|c| {
                let size = chunk_size.min(total_trials - c * chunk_size);
                let mut rng = chunk_rng(seed, c);
                let mut h = 0u64;
                for _ in 0..size {
                    if trial(&mut rng) {
                        h += 1;
                    }
                }
                (h, size)
            })
            .collect();
        for (h, size) in batch {
            hits += h;
            trials += size;
            if hits >= target_hits {
                return (hits, trials);
            }
        }
        next = end;
    }
    (hits, trials)
}
