use std::ops::RangeInclusive;

/// How data-parallel loops are run.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and silently
/// degrades to `Sequential` otherwise, so callers never need their own `cfg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `range.map(f).collect()` with per-worker scratch state from `init`.
    /// Output order always follows the range.
    pub(crate) fn map_range<S, R, I, F>(self, range: RangeInclusive<usize>, init: I, f: F) -> Vec<R>
    where
        R: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && range.clone().count() >= PAR_MIN_ITEMS {
            use rayon::prelude::*;
            return range.into_par_iter().map_init(init, f).collect();
        }
        let mut state = init();
        range.map(|i| f(&mut state, i)).collect()
    }

    /// `items.iter().map(f).collect()`, in parallel when enabled.
    pub(crate) fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

/// Below this many items a parallel split costs more than it saves.
#[cfg(feature = "parallel")]
const PAR_MIN_ITEMS: usize = 48;
