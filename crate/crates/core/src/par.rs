//! Data-parallel helpers over index ranges.
//!
//! With the `parallel` feature (on by default) these dispatch to rayon;
//! without it they run as plain sequential loops. Results never depend on
//! how the range is partitioned.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `range`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

/// Maps `f` over `range`, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    range.map(f).collect()
}

/// Smallest index in `range` satisfying `pred`.
#[cfg(feature = "parallel")]
pub fn find_first<F>(range: Range<usize>, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    range.into_par_iter().find_first(|&i| pred(i))
}

/// Smallest index in `range` satisfying `pred`.
#[cfg(not(feature = "parallel"))]
pub fn find_first<F>(range: Range<usize>, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    range.into_iter().find(|&i| pred(i))
}

/// First `Some` produced by `f` over `range`, in index order.
#[cfg(feature = "parallel")]
pub fn find_map_first<T, F>(range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    range.into_par_iter().find_map_first(f)
}

/// First `Some` produced by `f` over `range`, in index order.
#[cfg(not(feature = "parallel"))]
pub fn find_map_first<T, F>(range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    range.into_iter().find_map(f)
}

/// True iff `pred` holds for every index of `range`.
pub fn all<F>(range: Range<usize>, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    find_first(range, |i| !pred(i)).is_none()
}

/// Whether this build runs scans on the rayon pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let v = map_range(0..1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
    }

    #[test]
    fn find_first_is_minimal() {
        assert_eq!(find_first(0..10_000, |i| i % 997 == 5 && i > 10), Some(1002));
        assert_eq!(find_first(0..10, |_| false), None);
        assert_eq!(find_map_first(0..100, |i| (i > 40).then_some(i * 2)), Some(82));
    }
}
