//! Element-wise fan-out for sweeps and batch work.
//!
//! With the `parallel` feature (on by default) the work is spread over the
//! rayon pool; without it every [`Execution`] runs on the calling thread.
//! Results always come back in input order.

use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

pub fn map_range<T, F>(exec: Execution, range: RangeInclusive<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().map(f).collect(),
        _ => range.map(f).collect(),
    }
}

pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_preserve_order() {
        let seq = map_range(Execution::Sequential, 1..=1000, |n| n * n);
        let par = map_range(Execution::Parallel, 1..=1000, |n| n * n);
        assert_eq!(seq, par);
        assert_eq!(seq[9], 100);
        let words = ["a", "bb", "ccc"];
        assert_eq!(
            map_slice(Execution::Parallel, &words, |w| w.len()),
            [1, 2, 3]
        );
    }
}
