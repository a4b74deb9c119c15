//! Convergence traces and run results shared by both search engines.

use crate::point::Point;

/// Phase boundaries reported to run observers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchPhase {
    /// After the initial population is sampled and evaluated.
    Initialization,
    /// After a diffusion pass merges.
    Diffusion,
    /// After the first update process merges.
    FirstUpdate,
    /// After the second update process merges.
    SecondUpdate,
    /// After survivor truncation (fractal search).
    Selection,
}

/// Per-generation progress snapshot, recorded after the generation's phases
/// complete.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    /// 1-based generation counter.
    pub generation: u32,
    /// Total objective evaluations performed so far, including
    /// initialization.
    pub evaluations: u64,
    /// Best fitness in the population (equals best-so-far under greedy
    /// acceptance).
    pub best_fitness: f64,
    /// Mean fitness over the current population.
    pub mean_fitness: f64,
}

/// Generation-ordered sequence of [`TraceRecord`]s.
///
/// Engines guarantee: generations strictly increase, evaluations strictly
/// increase, and best fitness never increases.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceTrace {
    records: Vec<TraceRecord>,
}

impl ConvergenceTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_records(records: Vec<TraceRecord>) -> Self {
        Self { records }
    }

    pub fn push(&mut self, record: TraceRecord) {
        if let Some(last) = self.records.last() {
            debug_assert!(record.generation > last.generation);
            debug_assert!(record.evaluations > last.evaluations);
            debug_assert!(record.best_fitness <= last.best_fitness);
        }
        self.records.push(record);
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn final_best(&self) -> Option<f64> {
        self.records.last().map(|r| r.best_fitness)
    }
}

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Best point found; its fitness equals the minimum recorded in `trace`.
    pub best_point: Point,
    /// One record per executed generation.
    pub trace: ConvergenceTrace,
    /// Total objective evaluations across all phases.
    pub evaluations: u64,
    /// Generations actually executed (less than the configured maximum only
    /// on early stop).
    pub generations_run: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_accumulates_in_order() {
        let mut trace = ConvergenceTrace::new();
        assert!(trace.is_empty());
        assert_eq!(trace.final_best(), None);
        trace.push(TraceRecord {
            generation: 1,
            evaluations: 10,
            best_fitness: 5.0,
            mean_fitness: 9.0,
        });
        trace.push(TraceRecord {
            generation: 2,
            evaluations: 20,
            best_fitness: 3.0,
            mean_fitness: 6.0,
        });
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.final_best(), Some(3.0));
        assert_eq!(trace.records()[0].generation, 1);
    }
}
