//! Order-preserving parallel map, sequential when the `parallel` feature is
//! off (e.g. in the browser build).

#[cfg(feature = "parallel")]
pub(crate) fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Workers available to the current pool.
pub(crate) fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Splits `[lo, hi)` into at most `parts_hint * 4` contiguous blocks.
pub(crate) fn blocks(lo: u64, hi: u64, parts_hint: usize) -> Vec<(u64, u64)> {
    if hi <= lo {
        return Vec::new();
    }
    let parts = (parts_hint.max(1) * 4) as u64;
    let len = hi - lo;
    let size = len.div_ceil(parts).max(1);
    (0..)
        .map(|i| lo + i * size)
        .take_while(|&s| s < hi)
        .map(|s| (s, (s + size).min(hi)))
        .collect()
}

/// Runs `f` with scans inside it using `threads` workers (0 picks the
/// hardware count). Without the `parallel` feature `f` simply runs.
pub fn with_threads<R, F>(threads: usize, f: F) -> crate::Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| crate::Error::InvalidInput(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(f())
    }
}
