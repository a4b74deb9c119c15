//! Experiment configuration: a flat `key = value` document, optional CLI
//! overrides, and validation into an [`ExperimentConfig`].
//!
//! The document format is deliberately plain: one `key = value` per line,
//! `#` starts a comment, list values are comma separated (optionally in
//! square brackets). Keys shared by both algorithms are `algorithm`,
//! `benchmark`, `dim`, `pop`, `generations`, `seeds`, and `out`. Keys
//! `diffusions`, `walk`, and `target_fitness` apply only to `sfs`; keys
//! `offspring`, `survivors`, `levy_prob`, and `beta` apply only to `fs`.
//! Supplying a key the selected algorithm does not accept is an error, as
//! is any key outside this vocabulary.

use sfs_core::benchmarks::{Benchmark, BenchmarkKind, DEFAULT_DIMENSION};
use sfs_core::fractal::FsConfig;
use sfs_core::sfs::SfsConfig;
use sfs_core::walks::LEVY_BETA_RANGE;

use crate::error::{HarnessError, Result};

/// Which search engine an experiment drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Sfs,
    Fs,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sfs => "sfs",
            Algorithm::Fs => "fs",
        }
    }

    fn parse(text: &str) -> Option<Self> {
        match text {
            "sfs" => Some(Algorithm::Sfs),
            "fs" => Some(Algorithm::Fs),
            _ => None,
        }
    }
}

/// Engine parameters for the selected algorithm. The embedded `seed` field
/// is a placeholder; [`crate::run_experiment`] overwrites it per run.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineConfig {
    Sfs(SfsConfig),
    Fs(FsConfig),
}

/// A fully validated experiment: engine parameters, benchmark, seed batch,
/// and output location.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub benchmark: BenchmarkKind,
    pub dimension: usize,
    pub engine: EngineConfig,
    /// Run order; every entry produces one trace file.
    pub seeds: Vec<u64>,
    /// Artifacts land at `<prefix>_seed<seed>.csv` and
    /// `<prefix>_summary.json`.
    pub output_prefix: String,
}

impl ExperimentConfig {
    /// The benchmark objective at the configured dimension.
    pub fn benchmark_instance(&self) -> Benchmark {
        Benchmark::new(self.benchmark, self.dimension)
            .expect("dimension was validated against the benchmark at parse time")
    }
}

/// Splits a config document into ordered `(key, value)` pairs.
///
/// Rejects malformed lines (no `=`) and duplicate keys; values are kept as
/// raw text so CLI overrides can layer on before validation.
pub fn parse_document(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(HarnessError::Syntax { line: idx + 1 })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(HarnessError::Syntax { line: idx + 1 });
        }
        if pairs.iter().any(|(existing, _)| existing == key) {
            return Err(HarnessError::Invalid(format!("duplicate key `{key}`")));
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok(pairs)
}

/// Sets `key` to `value`, replacing an existing entry or appending a new
/// one. CLI flags funnel through here so they win over the document.
pub fn apply_override(pairs: &mut Vec<(String, String)>, key: &str, value: String) {
    match pairs.iter_mut().find(|(existing, _)| existing == key) {
        Some(entry) => entry.1 = value,
        None => pairs.push((key.to_string(), value)),
    }
}

/// Parses and validates a config document. Equivalent to
/// [`parse_document`] followed by [`config_from_pairs`].
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    config_from_pairs(parse_document(text)?)
}

const ALL_KEYS: [&str; 14] = [
    "algorithm",
    "benchmark",
    "dim",
    "pop",
    "generations",
    "diffusions",
    "walk",
    "target_fitness",
    "seeds",
    "out",
    "offspring",
    "survivors",
    "levy_prob",
    "beta",
];
const SFS_ONLY: [&str; 3] = ["diffusions", "walk", "target_fitness"];
const FS_ONLY: [&str; 4] = ["offspring", "survivors", "levy_prob", "beta"];

/// Validates key-value pairs into an [`ExperimentConfig`], applying the
/// documented defaults for omitted optional keys.
pub fn config_from_pairs(pairs: Vec<(String, String)>) -> Result<ExperimentConfig> {
    for (key, _) in &pairs {
        if !ALL_KEYS.contains(&key.as_str()) {
            return Err(HarnessError::UnknownKey(key.clone()));
        }
    }
    let get = |key: &str| {
        pairs
            .iter()
            .find(|(existing, _)| existing == key)
            .map(|(_, value)| value.as_str())
    };

    let algorithm = match get("algorithm") {
        Some(value) => Algorithm::parse(value).ok_or_else(|| HarnessError::InvalidValue {
            key: "algorithm",
            value: value.to_string(),
            expected: "`sfs` or `fs`".to_string(),
        })?,
        None => return Err(HarnessError::MissingKey("algorithm")),
    };
    let forbidden: &[&str] = match algorithm {
        Algorithm::Sfs => &FS_ONLY,
        Algorithm::Fs => &SFS_ONLY,
    };
    for (key, _) in &pairs {
        if forbidden.contains(&key.as_str()) {
            return Err(HarnessError::InapplicableKey {
                key: key.clone(),
                algorithm: algorithm.name(),
            });
        }
    }

    let benchmark_name = get("benchmark").ok_or(HarnessError::MissingKey("benchmark"))?;
    let benchmark = parse_benchmark(benchmark_name)?;
    let dimension = match get("dim") {
        Some(value) => parse_number::<usize>("dim", value, "a positive integer")
            .and_then(|d| at_least("dim", value, d, 1))?,
        None => DEFAULT_DIMENSION,
    };
    // Re-validates the pairing (rosenbrock needs at least two dimensions).
    if let Err(err) = Benchmark::new(benchmark, dimension) {
        return Err(HarnessError::InvalidValue {
            key: "dim",
            value: dimension.to_string(),
            expected: err.to_string(),
        });
    }

    let seeds = parse_seeds(get("seeds").ok_or(HarnessError::MissingKey("seeds"))?)?;
    let output_prefix = match get("out") {
        Some(value) if !value.is_empty() => value.to_string(),
        Some(_) => {
            return Err(HarnessError::InvalidValue {
                key: "out",
                value: String::new(),
                expected: "a non-empty path prefix".to_string(),
            })
        }
        None => format!("{}_{}", algorithm.name(), benchmark.name()),
    };

    let engine = match algorithm {
        Algorithm::Sfs => {
            let mut engine = SfsConfig::default();
            if let Some(value) = get("pop") {
                engine.population_size = parse_number("pop", value, "an integer of at least 3")
                    .and_then(|n| at_least("pop", value, n, 3))?;
            }
            if let Some(value) = get("generations") {
                engine.max_generations =
                    parse_number("generations", value, "an integer of at least 1")
                        .and_then(|g| at_least("generations", value, g, 1))?;
            }
            if let Some(value) = get("diffusions") {
                engine.diffusion_count =
                    parse_number("diffusions", value, "an integer of at least 1")
                        .and_then(|q| at_least("diffusions", value, q, 1))?;
            }
            if let Some(value) = get("walk") {
                engine.walk_choice_prob = parse_probability("walk", value)?;
            }
            if let Some(value) = get("target_fitness") {
                let target: f64 = parse_number("target_fitness", value, "a finite number")?;
                if !target.is_finite() {
                    return Err(HarnessError::InvalidValue {
                        key: "target_fitness",
                        value: value.to_string(),
                        expected: "a finite number".to_string(),
                    });
                }
                engine.target_fitness = Some(target);
            }
            engine
                .validate()
                .map_err(|err| HarnessError::Invalid(err.to_string()))?;
            EngineConfig::Sfs(engine)
        }
        Algorithm::Fs => {
            let mut engine = FsConfig::default();
            if let Some(value) = get("pop") {
                engine.initial_population =
                    parse_number("pop", value, "an integer of at least 1")
                        .and_then(|n| at_least("pop", value, n, 1))?;
            }
            if let Some(value) = get("generations") {
                engine.max_generations =
                    parse_number("generations", value, "a non-negative integer")?;
            }
            if let Some(value) = get("offspring") {
                engine.offspring_per_particle =
                    parse_number("offspring", value, "an integer of at least 1")
                        .and_then(|p| at_least("offspring", value, p, 1))?;
            }
            match get("survivors") {
                Some(value) => {
                    engine.survivor_count =
                        parse_number("survivors", value, "an integer of at least 1")
                            .and_then(|k| at_least("survivors", value, k, 1))?;
                }
                // Keeping the population size constant is the natural
                // default when only `pop` is given.
                None => engine.survivor_count = engine.initial_population,
            }
            let pool = engine.initial_population * engine.offspring_per_particle;
            if engine.survivor_count > pool {
                return Err(HarnessError::InvalidValue {
                    key: "survivors",
                    value: engine.survivor_count.to_string(),
                    expected: format!("at most pop * offspring = {pool}"),
                });
            }
            if let Some(value) = get("levy_prob") {
                engine.levy_prob = parse_probability("levy_prob", value)?;
            }
            if let Some(value) = get("beta") {
                let beta: f64 = parse_number("beta", value, "a number")?;
                let (lo, hi) = LEVY_BETA_RANGE;
                if !(beta > lo && beta < hi) {
                    return Err(HarnessError::InvalidValue {
                        key: "beta",
                        value: value.to_string(),
                        expected: format!("a value in the open interval ({lo}, {hi})"),
                    });
                }
                engine.beta = beta;
            }
            engine
                .validate()
                .map_err(|err| HarnessError::Invalid(err.to_string()))?;
            EngineConfig::Fs(engine)
        }
    };

    Ok(ExperimentConfig {
        algorithm,
        benchmark,
        dimension,
        engine,
        seeds,
        output_prefix,
    })
}

fn parse_benchmark(name: &str) -> Result<BenchmarkKind> {
    BenchmarkKind::ALL
        .into_iter()
        .find(|kind| kind.name() == name)
        .ok_or_else(|| {
            let names: Vec<&str> = BenchmarkKind::ALL.iter().map(|kind| kind.name()).collect();
            HarnessError::InvalidValue {
                key: "benchmark",
                value: name.to_string(),
                expected: format!("one of {}", names.join(", ")),
            }
        })
}

fn parse_number<T: std::str::FromStr>(key: &'static str, value: &str, expected: &str) -> Result<T> {
    value.parse().map_err(|_| HarnessError::InvalidValue {
        key,
        value: value.to_string(),
        expected: expected.to_string(),
    })
}

fn at_least<T>(key: &'static str, value: &str, parsed: T, minimum: T) -> Result<T>
where
    T: PartialOrd + Copy + std::fmt::Display,
{
    if parsed < minimum {
        return Err(HarnessError::InvalidValue {
            key,
            value: value.to_string(),
            expected: format!("an integer of at least {minimum}"),
        });
    }
    Ok(parsed)
}

fn parse_probability(key: &'static str, value: &str) -> Result<f64> {
    let p: f64 = parse_number(key, value, "a probability in [0,1]")?;
    if !(0.0..=1.0).contains(&p) {
        return Err(HarnessError::InvalidValue {
            key,
            value: value.to_string(),
            expected: "a probability in [0,1]".to_string(),
        });
    }
    Ok(p)
}

fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    let inner = match value.strip_prefix('[') {
        Some(stripped) => stripped
            .strip_suffix(']')
            .ok_or_else(|| HarnessError::InvalidValue {
                key: "seeds",
                value: value.to_string(),
                expected: "a closing `]`".to_string(),
            })?,
        None => value,
    };
    let inner = inner.trim();
    if inner.is_empty() {
        return Err(HarnessError::Invalid(
            "at least one seed is required".to_string(),
        ));
    }
    inner
        .split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<u64>().map_err(|_| HarnessError::InvalidValue {
                key: "seeds",
                value: part.to_string(),
                expected: "a comma-separated list of unsigned 64-bit integers".to_string(),
            })
        })
        .collect()
}
