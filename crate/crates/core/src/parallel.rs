//! Order-preserving batch execution, data-parallel when the `parallel`
//! feature is enabled. Results never depend on the thread count: items are
//! mapped independently and collected in index order.

/// Maps `f` over `0..n`, in parallel when available.
#[cfg(feature = "parallel")]
pub fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Always-sequential variant, kept callable so the two execution paths can be
/// compared directly in benchmarks and tests.
pub fn map_indexed_sequential<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
