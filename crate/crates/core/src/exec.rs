use std::ops::Range;

/// Execution mode for the data-parallel inner loops.
///
/// `Par` silently degrades to sequential execution when the crate is built
/// without the `parallel` feature. Results never depend on the mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Seq,
    Par,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Par
        } else {
            Exec::Seq
        }
    }
}

impl Exec {
    /// How many pieces to cut coarse-grained work into.
    pub(crate) fn pieces(self) -> usize {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Par => 4 * rayon::current_num_threads(),
            _ => 1,
        }
    }

    /// Sum `f` over `range`. `f` must be pure; the order of evaluation is unspecified.
    pub(crate) fn sum_u128<F>(self, range: Range<usize>, f: F) -> u128
    where
        F: Fn(usize) -> u128 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Par => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).sum()
            }
            _ => range.map(f).sum(),
        }
    }

    /// Map `f` over `range`, keeping order.
    pub(crate) fn map_collect<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Par => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).collect()
            }
            _ => range.map(f).collect(),
        }
    }
}
