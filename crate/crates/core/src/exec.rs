//! Data-parallel map with a sequential fallback. With the `parallel`
//! feature (default) `map` uses rayon; without it, it is a plain iterator.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_seq<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_par<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    map_seq(items, f)
}

/// Order-preserving map; parallel when the feature is enabled.
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    map_par(items, f)
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
