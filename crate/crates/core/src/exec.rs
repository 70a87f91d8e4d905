//! Chunked execution of Monte Carlo loops.
//!
//! Estimators split their sample range into fixed-size chunks, compute one
//! partial result per chunk and combine the partials in chunk order. The
//! chunk layout depends only on the sample count, so any executor that
//! returns results in chunk order yields bit-identical estimates.

use alloc::vec::Vec;
use core::ops::Range;

/// Samples per chunk. Fixed: changing it changes merge order and therefore
/// the last bits of every estimate.
pub const CHUNK_SIZE: u64 = 4096;

pub trait Executor {
    /// Evaluates `f(0), f(1), .., f(chunks - 1)` and returns the results in
    /// index order.
    fn map_chunks<T, F>(&self, chunks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every chunk on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_chunks<T, F>(&self, chunks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..chunks).map(f).collect()
    }
}

pub fn chunk_count(samples: u64) -> usize {
    samples.div_ceil(CHUNK_SIZE) as usize
}

pub fn chunk_range(chunk: usize, samples: u64) -> Range<u64> {
    let start = chunk as u64 * CHUNK_SIZE;
    start..(start + CHUNK_SIZE).min(samples)
}

/// Runs `per_chunk` over every chunk of `0..samples` and folds the partial
/// results left to right with `merge`.
pub fn run_chunked<E, T, F, M>(exec: &E, samples: u64, per_chunk: F, merge: M) -> Option<T>
where
    E: Executor + ?Sized,
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    exec.map_chunks(chunk_count(samples), |c| per_chunk(chunk_range(c, samples)))
        .into_iter()
        .reduce(merge)
}
