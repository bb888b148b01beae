//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon;
//! without it they run the same closures sequentially. Results are identical
//! either way: maps preserve input order and `find_first` returns the leftmost
//! match.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    range.map(f).collect()
}

/// Leftmost element satisfying `pred`.
#[cfg(feature = "parallel")]
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().find_first(|x| pred(x))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    F: Fn(&T) -> bool,
{
    items.iter().find(|x| pred(x))
}

/// Smallest index in `range` satisfying `pred`.
#[cfg(feature = "parallel")]
pub fn position_first<F>(range: std::ops::Range<u64>, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    range.into_par_iter().find_first(|&k| pred(k))
}

#[cfg(not(feature = "parallel"))]
pub fn position_first<F>(mut range: std::ops::Range<u64>, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool,
{
    range.find(|&k| pred(k))
}

#[cfg(feature = "parallel")]
pub fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().all(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T, F>(items: &[T], pred: F) -> bool
where
    F: Fn(&T) -> bool,
{
    items.iter().all(pred)
}

/// Runs `f` on a pool with `threads` workers (0 = library default).
/// Without the `parallel` feature the thread count is ignored.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Whether the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
