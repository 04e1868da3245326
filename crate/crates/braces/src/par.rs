//! Thin wrappers over the data-parallel loops. With the `parallel` feature the
//! work runs on rayon; without it the same helpers fall back to plain iterators,
//! so callers never branch on the feature themselves. Outputs preserve input
//! order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Run `f` on a pool of `workers` threads (0 = rayon's default). Without the
/// `parallel` feature the worker count is ignored and `f` runs inline.
pub fn run_with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        if workers == 0 {
            return f();
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool")
            .install(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_vec<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_vec<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn all<T>(items: &[T], f: impl Fn(&T) -> bool) -> bool {
    items.iter().all(f)
}
