//! Thin switch between rayon data-parallel iteration and a sequential
//! fallback, selected by the `rayon` cargo feature. The hot loops in this
//! crate (per-fixture verification, per-orbit classification, per-weight
//! character computations) are all embarrassingly parallel maps over
//! immutable inputs, so this is the only shape needed.

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Map over a slice, in parallel when the `rayon` feature is enabled.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "rayon")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "rayon"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map over an index range, in parallel when the `rayon` feature is enabled.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "rayon")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "rayon"))]
    {
        (0..n).map(f).collect()
    }
}
