//! Data-parallel map with a sequential fallback. The `parallel` feature
//! (default) routes through rayon; without it everything runs on one thread.
//! Both paths produce results in input order, so reports are byte-identical
//! across thread counts.

/// Execution mode for the fan-out heavy entry points (verification suites,
/// candidate search). `Parallel` falls back to sequential when the crate is
/// built without the `parallel` feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Parallel,
    Sequential,
}

impl Default for ExecMode {
    fn default() -> Self {
        ExecMode::Parallel
    }
}

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(mode: ExecMode, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => (0..count).into_par_iter().map(f).collect(),
        ExecMode::Sequential => (0..count).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(_mode: ExecMode, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}
