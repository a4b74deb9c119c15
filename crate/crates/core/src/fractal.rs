//! Fractal Search: energy-carrying particles diffusing by levy or Gaussian
//! steps, with elitist survivor truncation.
//!
//! Each particle carries a positive energy. Diffusion splits the parent's
//! energy equally among its offspring (total energy per batch is conserved),
//! and a particle's step length scales with its energy, so descendants of
//! heavily-split lineages explore ever more locally. Survivors are the
//! fitness-best particles out of the pooled parents and offspring.

use crate::bounds::{initialize_point, repair, Bounds};
use crate::error::{Error, Result};
use crate::exec::{try_map_indexed, ExecutionMode};
use crate::objective::Objective;
use crate::point::Point;
use crate::rng::{Phase, RandomSource, StreamFamily};
use crate::trace::{ConvergenceTrace, RunResult, SearchPhase, TraceRecord};
use crate::walks::{levy_sample, LEVY_BETA_RANGE};

/// Energy particles start with this much energy.
pub const INITIAL_ENERGY: f64 = 1.0;

/// A candidate solution carrying diffusion energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyParticle {
    coords: Vec<f64>,
    energy: f64,
    fitness: f64,
}

impl EnergyParticle {
    /// Requires positive finite energy and finite fitness.
    pub fn new(coords: Vec<f64>, energy: f64, fitness: f64) -> Result<Self> {
        if !(energy.is_finite() && energy > 0.0) {
            return Err(Error::parameter(
                "energy",
                format!("{energy} is not a positive finite value"),
            ));
        }
        if !fitness.is_finite() {
            return Err(Error::NonFiniteFitness { value: fitness });
        }
        Ok(Self {
            coords,
            energy,
            fitness,
        })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    pub fn to_point(&self) -> Point {
        Point::evaluated(self.coords.clone(), self.fitness)
            .expect("particle fitness is always finite")
    }
}

/// Fractal Search parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FsConfig {
    /// Particles sampled at startup; at least 1.
    pub initial_population: usize,
    /// Offspring per diffusing particle (`p`); at least 1.
    pub offspring_per_particle: usize,
    /// Particles kept after each generation's truncation; at least 1 and no
    /// more than `initial_population * offspring_per_particle`.
    pub survivor_count: usize,
    /// Generation budget; 0 means no diffusion (the initial best wins).
    pub max_generations: u32,
    /// Probability a diffusion step is a levy step instead of Gaussian; in
    /// `[0, 1]`.
    pub levy_prob: f64,
    /// Levy exponent, in the open interval (0.3, 1.99).
    pub beta: f64,
    /// Master seed for all randomness in the run.
    pub seed: u64,
}

impl Default for FsConfig {
    fn default() -> Self {
        Self {
            initial_population: 50,
            offspring_per_particle: 5,
            survivor_count: 50,
            max_generations: 200,
            levy_prob: 0.5,
            beta: 1.5,
            seed: 0,
        }
    }
}

impl FsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.initial_population < 1 {
            return Err(Error::parameter("initial_population", "must be at least 1"));
        }
        if self.offspring_per_particle < 1 {
            return Err(Error::parameter(
                "offspring_per_particle",
                "must be at least 1",
            ));
        }
        if self.survivor_count < 1 {
            return Err(Error::parameter("survivor_count", "must be at least 1"));
        }
        let pool = self.initial_population * self.offspring_per_particle;
        if self.survivor_count > pool {
            return Err(Error::parameter(
                "survivor_count",
                format!(
                    "{} exceeds initial_population * offspring_per_particle = {pool}",
                    self.survivor_count
                ),
            ));
        }
        if !(0.0..=1.0).contains(&self.levy_prob) {
            return Err(Error::parameter(
                "levy_prob",
                format!("{} is outside [0, 1]", self.levy_prob),
            ));
        }
        let (lo, hi) = LEVY_BETA_RANGE;
        if !(self.beta > lo && self.beta < hi) {
            return Err(Error::parameter(
                "beta",
                format!("{} is outside the open interval ({lo}, {hi})", self.beta),
            ));
        }
        Ok(())
    }
}

/// Diffuses one particle into `offspring_per_particle` children.
///
/// Each child receives an equal share `E/p` of the parent's energy, so the
/// batch conserves the parent's total. Children start at the parent's
/// coordinates plus a per-component step:
///
/// * levy (probability `levy_prob`): `E * levy_step * (upper - lower) / 2`,
/// * Gaussian otherwise: `E * z * (upper - lower) / 20`,
///
/// where `E` is the parent's energy. Steps are repaired into bounds and the
/// children evaluated.
///
/// Draw protocol per child: one uniform chooses the step family, then per
/// component either one levy sample (two normals) or one normal, then repair
/// uniforms for out-of-bounds components.
pub fn fs_diffuse<O, R>(
    particle: &EnergyParticle,
    config: &FsConfig,
    bounds: &Bounds,
    objective: &O,
    rng: &mut R,
) -> Result<Vec<EnergyParticle>>
where
    O: Objective + ?Sized,
    R: RandomSource + ?Sized,
{
    let p = config.offspring_per_particle;
    if p < 1 {
        return Err(Error::parameter(
            "offspring_per_particle",
            "must be at least 1",
        ));
    }
    if particle.coords.len() != bounds.dimension() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dimension(),
            actual: particle.coords.len(),
        });
    }

    let energy = particle.energy;
    let share = energy / p as f64;
    let mut offspring = Vec::with_capacity(p);
    for _ in 0..p {
        let take_levy = rng.uniform() < config.levy_prob;
        let mut coords = Vec::with_capacity(particle.coords.len());
        for (j, &x) in particle.coords.iter().enumerate() {
            let width = bounds.upper()[j] - bounds.lower()[j];
            let step = if take_levy {
                energy * levy_sample(config.beta, rng)? * width / 2.0
            } else {
                energy * rng.normal() * width / 20.0
            };
            coords.push(x + step);
        }
        let repaired = repair(&coords, bounds, rng);
        let fitness = objective.evaluate_checked(&repaired)?;
        offspring.push(EnergyParticle::new(repaired, share, fitness)?);
    }
    Ok(offspring)
}

/// Keeps the `k` lowest-fitness particles, ties broken by original index
/// (stable), returned in ascending fitness order. Returns everything when
/// `k` exceeds the list length; rejects an empty list and `k = 0`.
pub fn fs_select_survivors(particles: &[EnergyParticle], k: usize) -> Result<Vec<EnergyParticle>> {
    if particles.is_empty() {
        return Err(Error::PopulationTooSmall {
            minimum: 1,
            actual: 0,
        });
    }
    if k < 1 {
        return Err(Error::parameter("survivor_count", "must be at least 1"));
    }
    let mut order: Vec<usize> = (0..particles.len()).collect();
    order.sort_by(|&a, &b| {
        particles[a]
            .fitness
            .partial_cmp(&particles[b].fitness)
            .expect("particle fitness is always finite")
    });
    Ok(order
        .into_iter()
        .take(k)
        .map(|i| particles[i].clone())
        .collect())
}

/// Runs fractal search with the default execution mode.
pub fn fs_run<O>(config: &FsConfig, objective: &O, bounds: &Bounds) -> Result<RunResult>
where
    O: Objective + ?Sized,
{
    fs_run_with_mode(config, objective, bounds, ExecutionMode::default())
}

/// Runs fractal search with an explicit execution mode. Results are
/// identical across modes for the same seed.
pub fn fs_run_with_mode<O>(
    config: &FsConfig,
    objective: &O,
    bounds: &Bounds,
    mode: ExecutionMode,
) -> Result<RunResult>
where
    O: Objective + ?Sized,
{
    fs_run_with_observer(config, objective, bounds, mode, |_, _, _| {})
}

/// Like [`fs_run_with_mode`], invoking `observer` with the particle set
/// after initialization (generation 0) and after each generation's survivor
/// selection.
pub fn fs_run_with_observer<O, Obs>(
    config: &FsConfig,
    objective: &O,
    bounds: &Bounds,
    mode: ExecutionMode,
    mut observer: Obs,
) -> Result<RunResult>
where
    O: Objective + ?Sized,
    Obs: FnMut(SearchPhase, u32, &[EnergyParticle]),
{
    config.validate()?;
    if bounds.dimension() != objective.dimension() {
        return Err(Error::DimensionMismatch {
            expected: objective.dimension(),
            actual: bounds.dimension(),
        });
    }

    let streams = StreamFamily::new(config.seed);
    let mut particles = try_map_indexed(mode, config.initial_population, |i| {
        let mut rng = streams.stream(Phase::FractalInit, 0, i);
        let point = initialize_point(bounds, &mut rng);
        let fitness = objective.evaluate_checked(point.coords())?;
        EnergyParticle::new(point.coords().to_vec(), INITIAL_ENERGY, fitness)
    })?;
    let mut evaluations = config.initial_population as u64;
    observer(SearchPhase::Initialization, 0, &particles);

    let mut trace = ConvergenceTrace::new();
    for g in 1..=config.max_generations {
        let parents = &particles;
        let batches = try_map_indexed(mode, parents.len(), |i| {
            let mut rng = streams.stream(Phase::FractalDiffusion, g, i);
            fs_diffuse(&parents[i], config, bounds, objective, &mut rng)
        })?;
        evaluations += (parents.len() * config.offspring_per_particle) as u64;

        let mut pool = particles.clone();
        for batch in batches {
            pool.extend(batch);
        }
        particles = fs_select_survivors(&pool, config.survivor_count)?;
        observer(SearchPhase::Selection, g, &particles);

        let best = particles[0].fitness;
        let mean =
            particles.iter().map(EnergyParticle::fitness).sum::<f64>() / particles.len() as f64;
        trace.push(TraceRecord {
            generation: g,
            evaluations,
            best_fitness: best,
            mean_fitness: mean,
        });
    }

    let best = particles
        .iter()
        .min_by(|a, b| {
            a.fitness
                .partial_cmp(&b.fitness)
                .expect("particle fitness is always finite")
        })
        .expect("population is never empty");

    Ok(RunResult {
        best_point: best.to_point(),
        trace,
        evaluations,
        generations_run: config.max_generations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::FnObjective;
    use crate::rng::{ScriptedSource, SeededRng};
    use crate::walks::mantegna_sigma_u;
    use std::sync::atomic::{AtomicU64, Ordering};

    fn sphere(dim: usize) -> FnObjective<impl Fn(&[f64]) -> f64 + Send + Sync> {
        FnObjective::new(dim, |x: &[f64]| x.iter().map(|v| v * v).sum())
    }

    fn particle(coords: Vec<f64>, energy: f64, objective: &impl Objective) -> EnergyParticle {
        let fitness = objective.evaluate(&coords);
        EnergyParticle::new(coords, energy, fitness).unwrap()
    }

    #[test]
    fn particle_requires_positive_energy_and_finite_fitness() {
        assert!(EnergyParticle::new(vec![0.0], 0.0, 1.0).is_err());
        assert!(EnergyParticle::new(vec![0.0], -1.0, 1.0).is_err());
        assert!(EnergyParticle::new(vec![0.0], f64::NAN, 1.0).is_err());
        assert!(EnergyParticle::new(vec![0.0], 1.0, f64::INFINITY).is_err());
        assert!(EnergyParticle::new(vec![0.0], 0.25, -3.0).is_ok());
    }

    #[test]
    fn config_defaults_and_validation() {
        let config = FsConfig::default();
        assert_eq!(config.levy_prob, 0.5);
        assert_eq!(config.beta, 1.5);
        assert!(config.validate().is_ok());
        assert!(FsConfig {
            max_generations: 0,
            ..FsConfig::default()
        }
        .validate()
        .is_ok());

        for bad in [
            FsConfig {
                initial_population: 0,
                ..FsConfig::default()
            },
            FsConfig {
                offspring_per_particle: 0,
                ..FsConfig::default()
            },
            FsConfig {
                survivor_count: 0,
                ..FsConfig::default()
            },
            FsConfig {
                survivor_count: 251,
                ..FsConfig::default()
            },
            FsConfig {
                levy_prob: -0.1,
                ..FsConfig::default()
            },
            FsConfig {
                beta: 1.99,
                ..FsConfig::default()
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn diffusion_splits_energy_equally() {
        let objective = sphere(2);
        let bounds = Bounds::symmetric(-5.0, 5.0, 2).unwrap();
        let config = FsConfig {
            offspring_per_particle: 4,
            ..FsConfig::default()
        };
        let parent = particle(vec![0.5, -0.5], 1.0, &objective);
        let mut rng = SeededRng::new(2024);
        let offspring = fs_diffuse(&parent, &config, &bounds, &objective, &mut rng).unwrap();
        assert_eq!(offspring.len(), 4);
        for child in &offspring {
            assert_eq!(child.energy(), 0.25);
            assert!(bounds.contains(child.coords()));
        }
        let total: f64 = offspring.iter().map(EnergyParticle::energy).sum();
        assert!((total - parent.energy()).abs() <= 1e-12 * parent.energy());

        let config = FsConfig {
            offspring_per_particle: 1,
            ..FsConfig::default()
        };
        let offspring = fs_diffuse(&parent, &config, &bounds, &objective, &mut rng).unwrap();
        assert_eq!(offspring.len(), 1);
        assert_eq!(offspring[0].energy(), 1.0);
    }

    #[test]
    fn diffusion_rejects_zero_offspring() {
        let objective = sphere(1);
        let bounds = Bounds::symmetric(-1.0, 1.0, 1).unwrap();
        let config = FsConfig {
            offspring_per_particle: 0,
            ..FsConfig::default()
        };
        let parent = particle(vec![0.0], 1.0, &objective);
        let mut rng = SeededRng::new(0);
        assert!(fs_diffuse(&parent, &config, &bounds, &objective, &mut rng).is_err());
    }

    #[test]
    fn gaussian_step_scale_is_width_over_twenty_times_energy() {
        // levy_prob = 0 forces Gaussian steps. Width 20 makes the
        // per-component std equal the parent energy, so scripted normals
        // land at exactly energy * z.
        let objective = sphere(2);
        let bounds = Bounds::symmetric(-10.0, 10.0, 2).unwrap();
        let config = FsConfig {
            offspring_per_particle: 1,
            levy_prob: 0.0,
            ..FsConfig::default()
        };
        let parent = particle(vec![0.0, 0.0], 1.0, &objective);
        let mut rng = ScriptedSource::new([0.9], [1.5, -2.0]);
        let offspring = fs_diffuse(&parent, &config, &bounds, &objective, &mut rng).unwrap();
        assert_eq!(offspring[0].coords(), &[1.5, -2.0]);

        // Halving the energy halves the step.
        let parent = particle(vec![0.0, 0.0], 0.5, &objective);
        let mut rng = ScriptedSource::new([0.9], [1.5, -2.0]);
        let offspring = fs_diffuse(&parent, &config, &bounds, &objective, &mut rng).unwrap();
        assert_eq!(offspring[0].coords(), &[0.75, -1.0]);
    }

    #[test]
    fn levy_step_scale_is_half_width_times_energy() {
        // levy_prob = 1 forces levy steps; scripting the two normals to
        // produce a unit levy step isolates the scale factor
        // energy * (upper - lower) / 2.
        let objective = sphere(1);
        let bounds = Bounds::symmetric(-10.0, 10.0, 1).unwrap();
        let config = FsConfig {
            offspring_per_particle: 1,
            levy_prob: 1.0,
            ..FsConfig::default()
        };
        let sigma_u = mantegna_sigma_u(config.beta).unwrap();
        let parent = particle(vec![0.0], 0.5, &objective);
        let mut rng = ScriptedSource::new([0.0], [1.0 / sigma_u, 1.0]);
        let offspring = fs_diffuse(&parent, &config, &bounds, &objective, &mut rng).unwrap();
        let expected = 0.5 * 1.0 * 20.0 / 2.0;
        assert!((offspring[0].coords()[0] - expected).abs() < 1e-9);
    }

    #[test]
    fn survivor_selection_keeps_k_best_with_stable_ties() {
        let objective = FnObjective::new(1, |x: &[f64]| x[0]);
        let fitness = [3.0, 1.0, 4.0, 1.0, 5.0];
        let particles: Vec<EnergyParticle> = fitness
            .iter()
            .map(|&f| particle(vec![f], 1.0, &objective))
            .collect();

        let survivors = fs_select_survivors(&particles, 2).unwrap();
        assert_eq!(survivors.len(), 2);
        // Original indices 1 and 3 (both fitness 1), in index order.
        assert_eq!(survivors[0], particles[1]);
        assert_eq!(survivors[1], particles[3]);

        let all = fs_select_survivors(&particles, 99).unwrap();
        assert_eq!(all.len(), 5);
        let sorted: Vec<f64> = all.iter().map(EnergyParticle::fitness).collect();
        assert_eq!(sorted, vec![1.0, 1.0, 3.0, 4.0, 5.0]);

        let one = fs_select_survivors(&particles, 1).unwrap();
        assert_eq!(one[0], particles[1]);

        assert!(fs_select_survivors(&[], 2).is_err());
        assert!(fs_select_survivors(&particles, 0).is_err());
    }

    #[test]
    fn zero_generations_returns_best_initial_particle() {
        let objective = sphere(2);
        let bounds = Bounds::symmetric(-5.0, 5.0, 2).unwrap();
        let config = FsConfig {
            initial_population: 7,
            survivor_count: 7,
            max_generations: 0,
            seed: 31,
            ..FsConfig::default()
        };
        let result = fs_run(&config, &objective, &bounds).unwrap();
        assert_eq!(result.generations_run, 0);
        assert!(result.trace.is_empty());
        assert_eq!(result.evaluations, 7);

        // Rebuild the initial particles from the same substreams and check
        // the reported best is their minimum.
        let streams = StreamFamily::new(config.seed);
        let mut best = f64::INFINITY;
        for i in 0..config.initial_population {
            let mut rng = streams.stream(Phase::FractalInit, 0, i);
            let point = initialize_point(&bounds, &mut rng);
            best = best.min(objective.evaluate(point.coords()));
        }
        assert_eq!(result.best_point.known_fitness().unwrap(), best);
    }

    #[test]
    fn pool_counts_match_parents_plus_offspring() {
        let calls = AtomicU64::new(0);
        let objective = FnObjective::new(1, |x: &[f64]| {
            calls.fetch_add(1, Ordering::Relaxed);
            x[0] * x[0]
        });
        let bounds = Bounds::symmetric(-5.0, 5.0, 1).unwrap();
        let config = FsConfig {
            initial_population: 2,
            offspring_per_particle: 3,
            survivor_count: 2,
            max_generations: 1,
            seed: 8,
            ..FsConfig::default()
        };
        let mut sizes = Vec::new();
        let result = fs_run_with_observer(
            &config,
            &objective,
            &bounds,
            ExecutionMode::Sequential,
            |phase, _, particles| sizes.push((phase, particles.len())),
        )
        .unwrap();
        // Pool of 2 parents + 6 offspring truncated to 2 survivors.
        assert_eq!(sizes, vec![
            (SearchPhase::Initialization, 2),
            (SearchPhase::Selection, 2),
        ]);
        assert_eq!(result.evaluations, 8);
        assert_eq!(calls.load(Ordering::Relaxed), 8);
        assert_eq!(result.trace.len(), 1);
    }

    #[test]
    fn runs_are_deterministic_and_mode_independent() {
        let objective = sphere(3);
        let bounds = Bounds::symmetric(-5.0, 5.0, 3).unwrap();
        let config = FsConfig {
            initial_population: 6,
            offspring_per_particle: 3,
            survivor_count: 6,
            max_generations: 8,
            seed: 99,
            ..FsConfig::default()
        };
        let a = fs_run(&config, &objective, &bounds).unwrap();
        let b = fs_run(&config, &objective, &bounds).unwrap();
        assert_eq!(a, b);
        let seq =
            fs_run_with_mode(&config, &objective, &bounds, ExecutionMode::Sequential).unwrap();
        let par = fs_run_with_mode(&config, &objective, &bounds, ExecutionMode::Parallel).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn best_fitness_never_worsens_and_stays_in_bounds() {
        let objective = sphere(2);
        let bounds = Bounds::symmetric(-3.0, 3.0, 2).unwrap();
        let config = FsConfig {
            initial_population: 5,
            offspring_per_particle: 4,
            survivor_count: 10,
            max_generations: 12,
            seed: 17,
            ..FsConfig::default()
        };
        let result = fs_run_with_observer(
            &config,
            &objective,
            &bounds,
            ExecutionMode::Sequential,
            |_, _, particles| {
                for p in particles {
                    assert!(bounds.contains(p.coords()));
                    assert!(p.energy() > 0.0);
                }
            },
        )
        .unwrap();
        let records = result.trace.records();
        assert_eq!(records.len(), 12);
        for pair in records.windows(2) {
            assert!(pair[1].best_fitness <= pair[0].best_fitness);
            assert!(pair[1].evaluations > pair[0].evaluations);
        }
        assert_eq!(
            result.best_point.known_fitness().unwrap(),
            result.trace.final_best().unwrap()
        );
    }
}
