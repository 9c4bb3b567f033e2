use minspace_core::Executor;
use rayon::prelude::*;

/// Runs independent work items on the rayon pool. Results come back in index
/// order, so output does not depend on the number of threads.
#[derive(Debug, Clone, Copy, Default)]
pub struct RayonExecutor;

impl Executor for RayonExecutor {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}
