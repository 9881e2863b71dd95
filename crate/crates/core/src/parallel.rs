//! Data-parallel map over independent verification points.
//!
//! With the `parallel` feature the work runs on rayon's pool; without it, or
//! through [`map_sequential`], it runs in order on the calling thread. Results
//! always come back in input order.

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "GLAISHER_LAB_THREADS";

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_points<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_points<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

/// Parses a thread cap: a positive integer.
pub fn parse_thread_cap(value: &str) -> Option<usize> {
    value.trim().parse().ok().filter(|&n| n > 0)
}

/// Sizes the global pool from [`THREADS_ENV`] if set. Returns the cap that
/// was applied; an invalid value is an error message for the caller.
pub fn init_from_env() -> Result<Option<usize>, String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n = parse_thread_cap(&raw).ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    set_threads(n);
    Ok(Some(n))
}

#[cfg(feature = "parallel")]
fn set_threads(n: usize) {
    // fails only if the pool already exists, in which case it stays as built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) {}
