//! Feature-switched data-parallel helpers.
//!
//! With the `parallel` feature the `*_par` entry points fan work out over
//! rayon; without it they fall through to the sequential forms. The `_seq`
//! forms are always available so benchmarks can compare both on one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(not(feature = "parallel"))]
pub(crate) fn table_from_fn_seq<F>(len: usize, f: F) -> Vec<u8>
where
    F: Fn(usize) -> u8,
{
    (0..len).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn table_from_fn<F>(len: usize, f: F) -> Vec<u8>
where
    F: Fn(usize) -> u8 + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn table_from_fn<F>(len: usize, f: F) -> Vec<u8>
where
    F: Fn(usize) -> u8 + Sync,
{
    table_from_fn_seq(len, f)
}

/// Index of the first `i` in `0..len` with `f(i)`, in index order.
pub(crate) fn find_first_seq<F>(len: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool,
{
    (0..len).find(|&i| f(i))
}

#[cfg(feature = "parallel")]
pub(crate) fn find_first<F>(len: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..len).into_par_iter().find_first(|&i| f(i))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_first<F>(len: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    find_first_seq(len, f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn all_of_seq<F>(len: usize, f: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..len).all(f)
}

#[cfg(feature = "parallel")]
pub(crate) fn all_of<F>(len: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..len).into_par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn all_of<F>(len: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync,
{
    all_of_seq(len, f)
}

/// Maps `0..len` and collects in index order.
pub(crate) fn map_collect_seq<T, F>(len: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..len).map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_collect_seq(len, f)
}
