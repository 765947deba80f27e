//! Order-preserving batch evaluation: data-parallel via rayon when the
//! `parallel` feature is enabled, plain iteration otherwise.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_batch<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// Map `f` over `items`, preserving input order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_batch<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Map `f` over index chunks `[start, end)` of `0..len` and concatenate the
/// per-chunk results in chunk order.
#[cfg(feature = "parallel")]
pub fn map_chunks<U, F>(len: usize, chunk: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(std::ops::Range<usize>) -> Vec<U> + Sync + Send,
{
    let chunk = chunk.max(1);
    let ranges: Vec<std::ops::Range<usize>> = (0..len)
        .step_by(chunk)
        .map(|start| start..(start + chunk).min(len))
        .collect();
    ranges.into_par_iter().flat_map_iter(f).collect()
}

/// Map `f` over index chunks `[start, end)` of `0..len` and concatenate the
/// per-chunk results in chunk order.
#[cfg(not(feature = "parallel"))]
pub fn map_chunks<U, F>(len: usize, chunk: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(std::ops::Range<usize>) -> Vec<U> + Sync + Send,
{
    let chunk = chunk.max(1);
    (0..len)
        .step_by(chunk)
        .flat_map(|start| f(start..(start + chunk).min(len)))
        .collect()
}
