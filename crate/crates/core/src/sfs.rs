//! Stochastic Fractal Search: Gaussian-walk diffusion plus two rank-gated
//! update processes, all under greedy acceptance.
//!
//! Each generation runs three phases over the whole population:
//!
//! 1. **Diffusion**: every point spawns `diffusion_count` walk candidates
//!    around itself and keeps the best one if it improves on the point.
//! 2. **First update**: component-wise crossover towards two distinct
//!    partners, gated per component by rank probability.
//! 3. **Second update**: whole-vector moves relative to a partner and the
//!    best point, gated per point by re-ranked probability.
//!
//! Every phase draws from per-point substreams keyed by (seed, generation,
//! point index) and merges results in index order, so sequential and
//! parallel execution of the same seed produce identical results.

use crate::bounds::{initialize_point, repair, Bounds};
use crate::error::{Error, Result};
use crate::exec::{try_map_indexed, ExecutionMode};
use crate::objective::Objective;
use crate::point::Point;
use crate::population::{rank_probabilities, Population};
use crate::rng::{Phase, RandomSource, StreamFamily};
use crate::trace::{ConvergenceTrace, RunResult, SearchPhase, TraceRecord};
use crate::walks::{diffusion_walk, WalkParams};

/// Stochastic Fractal Search parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SfsConfig {
    /// Number of points kept across generations; at least 2 (the update
    /// processes additionally need at least 3 partners to run).
    pub population_size: usize,
    /// Generation budget; at least 1.
    pub max_generations: u32,
    /// Walk candidates generated per point per generation (`q`); at least 1.
    pub diffusion_count: usize,
    /// Probability that a diffusion candidate uses the best-point-centred
    /// walk instead of the self-centred one; in `[0, 1]`.
    pub walk_choice_prob: f64,
    /// Optional early-stop threshold, checked after each generation.
    pub target_fitness: Option<f64>,
    /// Master seed for all randomness in the run.
    pub seed: u64,
}

impl Default for SfsConfig {
    fn default() -> Self {
        Self {
            population_size: 50,
            max_generations: 500,
            diffusion_count: 1,
            walk_choice_prob: 0.75,
            target_fitness: None,
            seed: 0,
        }
    }
}

impl SfsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::parameter("population_size", "must be at least 2"));
        }
        if self.max_generations < 1 {
            return Err(Error::parameter("max_generations", "must be at least 1"));
        }
        if self.diffusion_count < 1 {
            return Err(Error::parameter("diffusion_count", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.walk_choice_prob) {
            return Err(Error::parameter(
                "walk_choice_prob",
                format!("{} is outside [0, 1]", self.walk_choice_prob),
            ));
        }
        if let Some(target) = self.target_fitness {
            if !target.is_finite() {
                return Err(Error::parameter("target_fitness", "must be finite"));
            }
        }
        Ok(())
    }
}

/// Diffuses one point: generates `diffusion_count` walk candidates around
/// `p`, repairs each into bounds, evaluates, and returns the best candidate
/// (ties keep the earliest). The caller decides greedy acceptance against
/// `p`.
///
/// Draw protocol per candidate: the walk choice and walk draws (see
/// [`diffusion_walk`]), then one uniform per out-of-bounds component during
/// repair.
pub fn diffuse<O, R>(
    p: &Point,
    bp: &Point,
    generation: u32,
    config: &SfsConfig,
    bounds: &Bounds,
    objective: &O,
    rng: &mut R,
) -> Result<Point>
where
    O: Objective + ?Sized,
    R: RandomSource + ?Sized,
{
    if config.diffusion_count < 1 {
        return Err(Error::parameter("diffusion_count", "must be at least 1"));
    }
    if p.dimension() != bounds.dimension() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dimension(),
            actual: p.dimension(),
        });
    }
    let params = WalkParams::new(generation, config.walk_choice_prob)?;

    let mut best: Option<Point> = None;
    for _ in 0..config.diffusion_count {
        let walked = diffusion_walk(p.coords(), bp.coords(), &params, rng)?;
        let repaired = repair(&walked, bounds, rng);
        let fitness = objective.evaluate_checked(&repaired)?;
        let better = match &best {
            None => true,
            Some(current) => fitness < current.known_fitness()?,
        };
        if better {
            best = Some(Point::evaluated(repaired, fitness)?);
        }
    }
    Ok(best.expect("diffusion_count is at least 1"))
}

/// First update process: rank-gated component-wise crossover.
///
/// With `Pa` from [`rank_probabilities`], point `i` first draws two partner
/// indices `t, r` (pairwise distinct from `i`, drawn whether or not any
/// component changes), then for each component `j` draws a gate uniform; if
/// it exceeds `Pa[i]`, the component becomes
/// `base[r][j] - eps * (base[t][j] - base[i][j])` with a fresh uniform `eps`.
/// All partner reads use the phase-start population. A point with at least
/// one changed component is repaired, evaluated (one evaluation), and
/// replaces the original only on strict improvement.
///
/// `rng_for(i)` must yield the private stream of point `i`. Returns the new
/// population and the number of objective evaluations performed.
pub fn first_update<O, F, R>(
    population: &Population,
    bounds: &Bounds,
    objective: &O,
    mode: ExecutionMode,
    rng_for: F,
) -> Result<(Population, u64)>
where
    O: Objective + ?Sized,
    F: Fn(usize) -> R + Sync,
    R: RandomSource,
{
    let n = population.len();
    if n < 3 {
        return Err(Error::PopulationTooSmall {
            minimum: 3,
            actual: n,
        });
    }
    let pa = rank_probabilities(population.points())?;
    let base = population.points();

    let outcomes = try_map_indexed(mode, n, |i| {
        let mut rng = rng_for(i);
        let t = rng.index_excluding(n, &[i]);
        let r = rng.index_excluding(n, &[i, t]);

        let mut coords = base[i].coords().to_vec();
        let mut modified = false;
        for (j, coord) in coords.iter_mut().enumerate() {
            if rng.uniform() > pa[i] {
                let eps = rng.uniform();
                *coord = base[r].coords()[j] - eps * (base[t].coords()[j] - base[i].coords()[j]);
                modified = true;
            }
        }
        if !modified {
            return Ok((base[i].clone(), 0u64));
        }
        let repaired = repair(&coords, bounds, &mut rng);
        let fitness = objective.evaluate_checked(&repaired)?;
        if fitness < base[i].known_fitness()? {
            Ok((Point::evaluated(repaired, fitness)?, 1))
        } else {
            Ok((base[i].clone(), 1))
        }
    })?;

    merge(outcomes)
}

/// Second update process: rank-gated whole-vector moves.
///
/// Ranks are recomputed on the incoming (post-first-update) population. For
/// each point `i`, one gate uniform is drawn; if it exceeds `Pa'[i]`, the
/// point draws partners `t, r` (pairwise distinct from `i`), a branch
/// uniform `eps'`, and a scalar step `eps-hat`, then moves to
///
/// * `p_i - eps_hat * (base[t] - bp)` when `eps' <= 0.5`, or
/// * `p_i + eps_hat * (base[t] - base[r])` otherwise,
///
/// followed by repair, one evaluation, and greedy whole-point acceptance.
///
/// `rng_for(i)` must yield the private stream of point `i`. Returns the new
/// population and the number of objective evaluations performed.
pub fn second_update<O, F, R>(
    population: &Population,
    bp: &Point,
    bounds: &Bounds,
    objective: &O,
    mode: ExecutionMode,
    rng_for: F,
) -> Result<(Population, u64)>
where
    O: Objective + ?Sized,
    F: Fn(usize) -> R + Sync,
    R: RandomSource,
{
    let n = population.len();
    if n < 3 {
        return Err(Error::PopulationTooSmall {
            minimum: 3,
            actual: n,
        });
    }
    if bp.dimension() != bounds.dimension() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dimension(),
            actual: bp.dimension(),
        });
    }
    let pa = rank_probabilities(population.points())?;
    let base = population.points();

    let outcomes = try_map_indexed(mode, n, |i| {
        let mut rng = rng_for(i);
        if rng.uniform() <= pa[i] {
            return Ok((base[i].clone(), 0u64));
        }
        let t = rng.index_excluding(n, &[i]);
        let r = rng.index_excluding(n, &[i, t]);
        let eps_prime = rng.uniform();
        let eps_hat = rng.uniform();

        let coords: Vec<f64> = if eps_prime <= 0.5 {
            base[i]
                .coords()
                .iter()
                .zip(base[t].coords())
                .zip(bp.coords())
                .map(|((&pi, &pt), &bpj)| pi - eps_hat * (pt - bpj))
                .collect()
        } else {
            base[i]
                .coords()
                .iter()
                .zip(base[t].coords())
                .zip(base[r].coords())
                .map(|((&pi, &pt), &pr)| pi + eps_hat * (pt - pr))
                .collect()
        };

        let repaired = repair(&coords, bounds, &mut rng);
        let fitness = objective.evaluate_checked(&repaired)?;
        if fitness < base[i].known_fitness()? {
            Ok((Point::evaluated(repaired, fitness)?, 1))
        } else {
            Ok((base[i].clone(), 1))
        }
    })?;

    merge(outcomes)
}

fn merge(outcomes: Vec<(Point, u64)>) -> Result<(Population, u64)> {
    let mut evaluations = 0;
    let mut points = Vec::with_capacity(outcomes.len());
    for (point, evals) in outcomes {
        evaluations += evals;
        points.push(point);
    }
    Ok((Population::new(points)?, evaluations))
}

/// Runs the full search with the default execution mode.
pub fn run<O>(config: &SfsConfig, objective: &O, bounds: &Bounds) -> Result<RunResult>
where
    O: Objective + ?Sized,
{
    run_with_mode(config, objective, bounds, ExecutionMode::default())
}

/// Runs the full search with an explicit execution mode. Results are
/// identical across modes for the same seed.
pub fn run_with_mode<O>(
    config: &SfsConfig,
    objective: &O,
    bounds: &Bounds,
    mode: ExecutionMode,
) -> Result<RunResult>
where
    O: Objective + ?Sized,
{
    run_with_observer(config, objective, bounds, mode, |_, _, _| {})
}

/// Like [`run_with_mode`], invoking `observer` with the merged population
/// after every phase (initialization reports generation 0).
pub fn run_with_observer<O, Obs>(
    config: &SfsConfig,
    objective: &O,
    bounds: &Bounds,
    mode: ExecutionMode,
    mut observer: Obs,
) -> Result<RunResult>
where
    O: Objective + ?Sized,
    Obs: FnMut(SearchPhase, u32, &Population),
{
    config.validate()?;
    if bounds.dimension() != objective.dimension() {
        return Err(Error::DimensionMismatch {
            expected: objective.dimension(),
            actual: bounds.dimension(),
        });
    }

    let streams = StreamFamily::new(config.seed);
    let n = config.population_size;
    let q = config.diffusion_count as u64;

    let points = try_map_indexed(mode, n, |i| {
        let mut rng = streams.stream(Phase::Init, 0, i);
        let mut point = initialize_point(bounds, &mut rng);
        point.evaluate(objective)?;
        Ok(point)
    })?;
    let mut evaluations = n as u64;
    let mut population = Population::new(points)?;
    observer(SearchPhase::Initialization, 0, &population);

    let mut trace = ConvergenceTrace::new();
    let mut generations_run = 0;

    for g in 1..=config.max_generations {
        let bp = population.best().clone();
        {
            let base = &population;
            let diffused = try_map_indexed(mode, n, |i| {
                let mut rng = streams.stream(Phase::Diffusion, g, i);
                let original = &base.points()[i];
                let candidate = diffuse(original, &bp, g, config, bounds, objective, &mut rng)?;
                if candidate.known_fitness()? < original.known_fitness()? {
                    Ok(candidate)
                } else {
                    Ok(original.clone())
                }
            })?;
            population = Population::new(diffused)?;
        }
        evaluations += n as u64 * q;
        observer(SearchPhase::Diffusion, g, &population);

        let (updated, evals) = first_update(&population, bounds, objective, mode, |i| {
            streams.stream(Phase::FirstUpdate, g, i)
        })?;
        population = updated;
        evaluations += evals;
        observer(SearchPhase::FirstUpdate, g, &population);

        let bp = population.best().clone();
        let (updated, evals) = second_update(&population, &bp, bounds, objective, mode, |i| {
            streams.stream(Phase::SecondUpdate, g, i)
        })?;
        population = updated;
        evaluations += evals;
        observer(SearchPhase::SecondUpdate, g, &population);

        generations_run = g;
        trace.push(TraceRecord {
            generation: g,
            evaluations,
            best_fitness: population.best_fitness(),
            mean_fitness: population.mean_fitness(),
        });

        if let Some(target) = config.target_fitness {
            if population.best_fitness() <= target {
                break;
            }
        }
    }

    Ok(RunResult {
        best_point: population.best().clone(),
        trace,
        evaluations,
        generations_run,
    })
}
