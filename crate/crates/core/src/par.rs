//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these dispatch to rayon unless the
//! process-wide mode is switched to [`Mode::Sequential`]. Results are always
//! collected in index order, so output never depends on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Parallel,
    Sequential,
}

pub fn set_mode(mode: Mode) {
    SEQUENTIAL.store(mode == Mode::Sequential, Ordering::Relaxed);
}

pub fn mode() -> Mode {
    if cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::Relaxed) {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

/// Run `f` with the given mode, restoring the previous one afterwards.
pub fn with_mode<R>(m: Mode, f: impl FnOnce() -> R) -> R {
    let prev = mode();
    set_mode(m);
    let r = f();
    set_mode(prev);
    r
}

/// Use `n` worker threads; `n ≤ 1` selects the sequential path. Must be
/// called before any parallel work.
pub fn set_threads(n: usize) -> Result<(), String> {
    if n <= 1 {
        set_mode(Mode::Sequential);
        return Ok(());
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())?;
    Ok(())
}

// Below this many items the scheduling overhead dominates.
#[cfg(feature = "parallel")]
const MIN_PARALLEL: usize = 16;

pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= MIN_PARALLEL && mode() == Mode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_range(items.len(), |i| f(&items[i]))
}

/// Like [`map_range`] but forces parallel dispatch even for short ranges, for
/// coarse-grained jobs such as per-weight layers.
pub fn map_coarse<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n > 1 && mode() == Mode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// First index (in order) for which `f` returns `Some`, together with the value.
pub fn find_first<T, F>(n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= MIN_PARALLEL && mode() == Mode::Parallel {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .filter_map(|i| f(i).map(|t| (i, t)))
            .find_first(|_| true);
    }
    (0..n).find_map(|i| f(i).map(|t| (i, t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = map_range(1000, |i| i * i);
        let b = with_mode(Mode::Sequential, || map_range(1000, |i| i * i));
        assert_eq!(a, b);
        let f = |i: usize| (i % 97 == 50).then_some(i);
        assert_eq!(find_first(1000, f), Some((50, 50)));
    }
}
