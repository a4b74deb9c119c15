//! The pluggable objective interface.

use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// A minimization target.
///
/// Implementations must be deterministic and side-effect free: the same
/// coordinates always give the same value. `Send + Sync` is required so
/// evaluations can run concurrently.
pub trait Objective: Send + Sync {
    /// Number of coordinates the objective expects.
    fn dimension(&self) -> usize;

    /// Search box conventionally used for this objective.
    fn default_bounds(&self) -> Bounds;

    /// Objective value at `coords`; lower is better. `coords.len()` must
    /// equal [`dimension`](Self::dimension).
    fn evaluate(&self, coords: &[f64]) -> f64;

    /// Evaluates and rejects non-finite values, which the search treats as a
    /// hard error rather than a fitness.
    fn evaluate_checked(&self, coords: &[f64]) -> Result<f64> {
        let value = self.evaluate(coords);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteFitness { value })
        }
    }
}

/// Adapter turning a plain closure into an [`Objective`].
///
/// Default bounds are `[-100, 100]` per axis unless overridden via
/// [`with_bounds`](Self::with_bounds).
pub struct FnObjective<F> {
    dimension: usize,
    bounds: Bounds,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(dimension: usize, f: F) -> Self {
        let bounds = Bounds::symmetric(-100.0, 100.0, dimension)
            .expect("dimension must be at least one");
        Self {
            dimension,
            bounds,
            f,
        }
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        assert_eq!(bounds.dimension(), self.dimension);
        self.bounds = bounds;
        self
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn default_bounds(&self) -> Bounds {
        self.bounds.clone()
    }

    fn evaluate(&self, coords: &[f64]) -> f64 {
        (self.f)(coords)
    }
}
