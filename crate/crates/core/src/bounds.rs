//! Box constraints and the uniform sampling/repair rules tied to them.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rng::RandomSource;

/// Axis-aligned box `[lower[j], upper[j]]` for each coordinate `j`.
///
/// Finite, non-empty, and strictly ordered per component.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidBounds {
                reason: format!(
                    "lower has {} components, upper has {}",
                    lower.len(),
                    upper.len()
                ),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidBounds {
                reason: "bounds must have at least one dimension".to_string(),
            });
        }
        for (j, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidBounds {
                    reason: format!("component {j} is not finite ({lo}, {hi})"),
                });
            }
            if lo >= hi {
                return Err(Error::InvalidBounds {
                    reason: format!("component {j} has lower {lo} >= upper {hi}"),
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// Same interval `[lower, upper]` replicated over `dimension` axes.
    pub fn symmetric(lower: f64, upper: f64, dimension: usize) -> Result<Self> {
        Self::new(vec![lower; dimension], vec![upper; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, coords: &[f64]) -> bool {
        coords.len() == self.dimension()
            && coords
                .iter()
                .zip(&self.lower)
                .zip(&self.upper)
                .all(|((&x, &lo), &hi)| x >= lo && x <= hi)
    }
}

/// Samples one point uniformly inside `bounds`:
/// `coords[j] = lower[j] + u_j * (upper[j] - lower[j])` with a fresh uniform
/// `u_j` per component, in index order. The returned point is unevaluated.
pub fn initialize_point<R: RandomSource + ?Sized>(bounds: &Bounds, rng: &mut R) -> Point {
    let coords = bounds
        .lower
        .iter()
        .zip(&bounds.upper)
        .map(|(&lo, &hi)| lo + rng.uniform() * (hi - lo))
        .collect();
    Point::unevaluated(coords)
}

/// Replaces every out-of-bounds component by a fresh uniform sample of that
/// component's interval; in-bounds components pass through untouched.
///
/// Consumes one uniform draw per violating component only, in index order.
/// Repairing an in-bounds vector returns it bit-for-bit unchanged.
pub fn repair<R: RandomSource + ?Sized>(coords: &[f64], bounds: &Bounds, rng: &mut R) -> Vec<f64> {
    debug_assert_eq!(coords.len(), bounds.dimension());
    coords
        .iter()
        .zip(&bounds.lower)
        .zip(&bounds.upper)
        .map(|((&x, &lo), &hi)| {
            if x >= lo && x <= hi {
                x
            } else {
                lo + rng.uniform() * (hi - lo)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{ScriptedSource, SeededRng};

    #[test]
    fn rejects_malformed_bounds() {
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![2.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![f64::NEG_INFINITY], vec![1.0]).is_err());
        assert!(Bounds::new(vec![0.0], vec![f64::NAN]).is_err());
    }

    #[test]
    fn initialize_uses_one_uniform_per_component() {
        // u = 0.75 over [-5, 5] lands at -5 + 0.75 * 10 = 2.5.
        let bounds = Bounds::symmetric(-5.0, 5.0, 1).unwrap();
        let mut rng = ScriptedSource::new([0.75], []);
        let point = initialize_point(&bounds, &mut rng);
        assert_eq!(point.coords(), &[2.5]);
        assert_eq!(point.fitness(), None);

        let bounds = Bounds::symmetric(0.0, 1.0, 2).unwrap();
        let mut rng = ScriptedSource::new([0.5, 0.5], []);
        assert_eq!(initialize_point(&bounds, &mut rng).coords(), &[0.5, 0.5]);

        let mut rng = ScriptedSource::new([0.0, 0.0], []);
        assert_eq!(initialize_point(&bounds, &mut rng).coords(), &[0.0, 0.0]);
    }

    #[test]
    fn initialized_points_stay_inside_random_bounds() {
        let mut rng = SeededRng::new(11);
        for trial in 0..10_000u64 {
            let dim = 1 + (trial % 7) as usize;
            let mut lower = Vec::with_capacity(dim);
            let mut upper = Vec::with_capacity(dim);
            for _ in 0..dim {
                let a = rng.uniform() * 200.0 - 100.0;
                let width = rng.uniform() * 50.0 + 1e-6;
                lower.push(a);
                upper.push(a + width);
            }
            let bounds = Bounds::new(lower, upper).unwrap();
            let point = initialize_point(&bounds, &mut rng);
            assert!(bounds.contains(point.coords()), "trial {trial}");
        }
    }

    #[test]
    fn repair_resamples_only_violations() {
        let bounds = Bounds::symmetric(0.0, 1.0, 1).unwrap();
        let mut rng = ScriptedSource::new([0.5], []);
        assert_eq!(repair(&[1.7], &bounds, &mut rng), vec![0.5]);

        let bounds = Bounds::symmetric(0.0, 1.0, 2).unwrap();
        let mut rng = ScriptedSource::new([0.25], []);
        assert_eq!(repair(&[-2.0, 0.4], &bounds, &mut rng), vec![0.25, 0.4]);
        assert_eq!(rng.remaining().0, 0, "in-bounds component must not draw");
    }

    #[test]
    fn repair_is_identity_on_inside_points() {
        let bounds = Bounds::new(vec![-1.0, 0.0], vec![1.0, 10.0]).unwrap();
        let mut rng = ScriptedSource::new([], []);
        let coords = [0.3, 9.999];
        assert_eq!(repair(&coords, &bounds, &mut rng), coords.to_vec());
        // Boundary values are in bounds.
        assert_eq!(
            repair(&[-1.0, 10.0], &bounds, &mut rng),
            vec![-1.0, 10.0]
        );
    }

    #[test]
    fn repair_is_idempotent() {
        let mut rng = SeededRng::new(23);
        let bounds = Bounds::new(vec![-3.0, 2.0, 0.0], vec![1.0, 4.0, 0.5]).unwrap();
        for _ in 0..1000 {
            let coords: Vec<f64> = (0..3).map(|_| rng.uniform() * 40.0 - 20.0).collect();
            let once = repair(&coords, &bounds, &mut rng);
            assert!(bounds.contains(&once));
            let twice = repair(&once, &bounds, &mut rng);
            assert_eq!(once, twice);
        }
    }
}
