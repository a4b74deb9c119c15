//! Execution-mode switch for the data-parallel phase loops.
//!
//! Every phase maps an independent closure over point indices and merges the
//! results in index order, so the outcome is identical whichever mode runs
//! it; parallelism only changes wall time. With the `parallel` cargo feature
//! disabled, [`ExecutionMode::Parallel`] silently degrades to sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How per-point work inside a phase is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecutionMode {
    Sequential,
    Parallel,
}

impl Default for ExecutionMode {
    /// Parallel when compiled in, sequential otherwise.
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecutionMode::Parallel
        } else {
            ExecutionMode::Sequential
        }
    }
}

/// Applies `f` to every index in `[0, n)` and collects the outputs in index
/// order, failing fast on the first error.
pub(crate) fn try_map_indexed<T, E, F>(mode: ExecutionMode, n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    match mode {
        ExecutionMode::Sequential => (0..n).map(f).collect(),
        ExecutionMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_produce_identical_ordered_output() {
        let square = |i: usize| -> Result<usize, ()> { Ok(i * i) };
        let seq = try_map_indexed(ExecutionMode::Sequential, 100, square).unwrap();
        let par = try_map_indexed(ExecutionMode::Parallel, 100, square).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }

    #[test]
    fn errors_propagate_from_any_index() {
        let f = |i: usize| if i == 63 { Err("boom") } else { Ok(i) };
        assert_eq!(
            try_map_indexed(ExecutionMode::Parallel, 100, f).unwrap_err(),
            "boom"
        );
    }
}
