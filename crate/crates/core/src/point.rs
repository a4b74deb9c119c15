//! Candidate solutions: coordinates plus an optional evaluated fitness.

use crate::error::{Error, Result};
use crate::objective::Objective;

/// One candidate solution.
///
/// `fitness` is `None` until the point has been evaluated; every evaluated
/// fitness is finite (a non-finite objective value is rejected as an error,
/// never stored).
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
    fitness: Option<f64>,
}

impl Point {
    pub fn unevaluated(coords: Vec<f64>) -> Self {
        Self {
            coords,
            fitness: None,
        }
    }

    pub fn evaluated(coords: Vec<f64>, fitness: f64) -> Result<Self> {
        if !fitness.is_finite() {
            return Err(Error::NonFiniteFitness { value: fitness });
        }
        Ok(Self {
            coords,
            fitness: Some(fitness),
        })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn fitness(&self) -> Option<f64> {
        self.fitness
    }

    /// Fitness of an evaluated point; errors if evaluation never happened.
    pub fn known_fitness(&self) -> Result<f64> {
        self.fitness.ok_or(Error::UnevaluatedFitness)
    }

    /// Evaluates the objective at this point's coordinates and stores the
    /// result. Rejects non-finite objective values.
    pub fn evaluate<O: Objective + ?Sized>(&mut self, objective: &O) -> Result<f64> {
        let value = objective.evaluate(&self.coords);
        if !value.is_finite() {
            return Err(Error::NonFiniteFitness { value });
        }
        self.fitness = Some(value);
        Ok(value)
    }
}
