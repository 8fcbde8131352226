//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature, [`Execution::Parallel`] runs on the rayon
//! global pool; without it, both variants run sequentially. Results are
//! always returned in input order, so output never depends on thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map_ordered<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Values in `range` satisfying `keep`, in increasing order.
pub fn filter_range<F>(exec: Execution, range: Range<u64>, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().filter(|&x| keep(x)).collect(),
        _ => range.filter(|&x| keep(x)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = map_ordered(Execution::Sequential, &items, |x| x * 3);
        let par = map_ordered(Execution::Parallel, &items, |x| x * 3);
        assert_eq!(seq, par);
        let seq = filter_range(Execution::Sequential, 0..5000, |x| x % 7 == 3);
        let par = filter_range(Execution::Parallel, 0..5000, |x| x % 7 == 3);
        assert_eq!(seq, par);
        assert!(par.windows(2).all(|w| w[0] < w[1]));
    }
}
