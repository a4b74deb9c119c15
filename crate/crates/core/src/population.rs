//! Populations and rank-based selection pressure.

use crate::error::{Error, Result};
use crate::point::Point;

/// A non-empty set of at least two evaluated points.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    points: Vec<Point>,
    best_index: usize,
}

impl Population {
    /// Minimum population size.
    pub const MIN_SIZE: usize = 2;

    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < Self::MIN_SIZE {
            return Err(Error::PopulationTooSmall {
                minimum: Self::MIN_SIZE,
                actual: points.len(),
            });
        }
        for point in &points {
            point.known_fitness()?;
        }
        let best_index = best_index_of(&points);
        Ok(Self { points, best_index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Index of the minimum fitness; first such index on ties.
    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn best(&self) -> &Point {
        &self.points[self.best_index]
    }

    pub fn best_fitness(&self) -> f64 {
        self.points[self.best_index]
            .fitness()
            .expect("population points are always evaluated")
    }

    pub fn mean_fitness(&self) -> f64 {
        let sum: f64 = self
            .points
            .iter()
            .map(|p| p.fitness().expect("population points are always evaluated"))
            .sum();
        sum / self.points.len() as f64
    }
}

fn best_index_of(points: &[Point]) -> usize {
    let mut best = 0;
    for (i, point) in points.iter().enumerate().skip(1) {
        if point.fitness() < points[best].fitness() {
            best = i;
        }
    }
    best
}

/// Selection pressure `Pa_i = rank_i / N`, where rank 1 is the worst
/// (highest) fitness and rank N the best. The best point gets `Pa = 1`, which
/// makes it immune to the `uniform > Pa` modification gates since uniforms
/// live in `[0, 1)`.
///
/// Ties keep original index order (stable), so equal-fitness points get
/// distinct, index-ordered ranks and the result is always the exact multiset
/// `{1/N, 2/N, ..., N/N}`.
pub fn rank_probabilities(points: &[Point]) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Err(Error::PopulationTooSmall {
            minimum: 1,
            actual: 0,
        });
    }
    let mut fitness = Vec::with_capacity(points.len());
    for point in points {
        fitness.push(point.known_fitness()?);
    }

    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Descending by fitness; stable, so ties stay in original index order.
    order.sort_by(|&a, &b| fitness[b].partial_cmp(&fitness[a]).expect("finite fitness"));

    let mut probabilities = vec![0.0; n];
    for (position, &original) in order.iter().enumerate() {
        probabilities[original] = (position + 1) as f64 / n as f64;
    }
    Ok(probabilities)
}
