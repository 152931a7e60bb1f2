//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers fan out over the
//! rayon pool; without it every [`Exec`] runs on the calling thread. All
//! reductions exposed here are order-independent, so results never depend on
//! the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the data-parallel loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to [`Exec::Sequential`] when built without `parallel`.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Maps `f` over `0..len`, keeping index order in the output.
pub fn map_range<R, F>(exec: Exec, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
        _ => (0..len).map(f).collect(),
    }
}

/// Sums `f` over `0..len`.
pub fn sum_range<F>(exec: Exec, len: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..len).into_par_iter().map(f).sum(),
        _ => (0..len).map(f).sum(),
    }
}

/// Largest `Some` value of `f` over `0..len`; `Err` from the first failing
/// index in iteration order is not guaranteed, only that some error wins.
pub fn try_max_range<E, F>(exec: Exec, len: usize, f: F) -> Result<Option<u32>, E>
where
    E: Send,
    F: Fn(usize) -> Result<u32, E> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..len)
            .into_par_iter()
            .map(f)
            .try_fold(|| None, |acc: Option<u32>, r| r.map(|v| acc.max(Some(v))))
            .try_reduce(|| None, |a, b| Ok(a.max(b))),
        _ => {
            let mut best = None;
            for i in 0..len {
                best = best.max(Some(f(i)?));
            }
            Ok(best)
        }
    }
}

/// Number of worker threads the parallel helpers will use.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (0 = automatic).
/// Sequential builds just call `f`.
pub fn with_workers<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}
