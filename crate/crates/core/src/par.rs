//! Thin data-parallel layer over rayon, with a sequential fallback when the
//! `parallel` feature is disabled. Every helper returns the same value in both
//! modes; callers rely on that for reproducible reports.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `op` on a pool of `threads` workers (`None` = rayon's default pool).
#[cfg(feature = "parallel")]
pub fn install<R: Send>(threads: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        },
        None => op(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn install<R: Send>(_threads: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    op()
}

pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// The result for the smallest index in `range` for which `f` returns `Some`.
pub fn find_map_first<T, F>(range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().find_map(f)
    }
}

/// True iff `f` holds for some index.
pub fn any<F>(range: Range<usize>, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().any(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().any(f)
    }
}

/// Minimum over all `Some` results.
pub fn min_of<T, F>(range: Range<usize>, f: F) -> Option<T>
where
    T: Ord + Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().filter_map(f).min()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().filter_map(f).min()
    }
}

pub fn flat_map_collect<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().flat_map_iter(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().flat_map(f).collect()
    }
}

pub fn map_collect<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().map(f).collect()
    }
}

pub fn sort_unstable<T: Ord + Send>(v: &mut [T]) {
    #[cfg(feature = "parallel")]
    {
        v.par_sort_unstable()
    }
    #[cfg(not(feature = "parallel"))]
    {
        v.sort_unstable()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers_agree_with_sequential() {
        let f = |i: usize| if i % 7 == 3 && i > 20 { Some(i * 2) } else { None };
        assert_eq!(find_map_first(0..1000, f), Some(48));
        assert_eq!(min_of(0..1000, |i| f(999 - i)), Some(48));
        assert!(any(0..100, |i| i == 99));
        let v = flat_map_collect(0..4, |i| vec![i; i]);
        assert_eq!(v, vec![1, 2, 2, 3, 3, 3]);
        let mut s = vec![5, 3, 9, 1];
        sort_unstable(&mut s);
        assert_eq!(s, vec![1, 3, 5, 9]);
    }

    #[test]
    fn install_single_thread() {
        let r = install(Some(1), || (current_threads(), find_map_first(0..10, |i| (i == 4).then_some(i))));
        assert_eq!(r, (1, Some(4)));
    }
}
