use pilot_overlap_core::Executor;
use rayon::prelude::*;

/// Executes chunks on a dedicated rayon pool. Results come back in chunk
/// order, so output does not depend on the number of workers.
pub struct Parallel {
    pool: rayon::ThreadPool,
}

impl Parallel {
    pub fn new(workers: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Self { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Parallel {
    fn map_chunks<T, F>(&self, chunks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..chunks).into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pilot_overlap_core::experiments::{estimate_e, estimate_e_cube_weighted};
    use pilot_overlap_core::{SeedSpec, Sequential};

    #[test]
    fn matches_sequential_bit_for_bit() {
        let seed = SeedSpec::new(5, 5);
        let seq = estimate_e(6, 50_001, seed, &Sequential).unwrap();
        let cube = estimate_e_cube_weighted(3, 30_000, seed, &Sequential).unwrap();
        for workers in [1, 3, 8] {
            let par = Parallel::new(workers).unwrap();
            assert_eq!(estimate_e(6, 50_001, seed, &par).unwrap(), seq);
            assert_eq!(estimate_e_cube_weighted(3, 30_000, seed, &par).unwrap(), cube);
        }
    }
}
