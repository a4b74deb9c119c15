//! Multi-seed experiment execution and summary statistics.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::Serialize;
use sfs_core::{fractal, sfs, Objective, RunResult};

use crate::config::{EngineConfig, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::trace_io::write_trace;

/// Aggregate statistics over the final best fitness of each seeded run.
///
/// `wall_time` is measured but deliberately not serialized, so the summary
/// JSON stays byte-identical across reruns of the same config; the CLI
/// reports timing on stdout instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub best: f64,
    pub median: f64,
    pub worst: f64,
    pub mean: f64,
    /// Population standard deviation (n divisor), 0 for a single seed.
    pub std: f64,
    pub total_evaluations: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SummaryStats {
    /// Aggregates `finals`, one entry per seeded run, in any order: the
    /// values are sorted internally, so permuting the seed list cannot
    /// change any statistic.
    ///
    /// # Panics
    /// Panics on an empty slice; configs guarantee at least one seed.
    pub fn from_finals(finals: &[f64], total_evaluations: u64, wall_time: Duration) -> Self {
        assert!(!finals.is_empty(), "stats need at least one run");
        let mut sorted = finals.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        let mean = sorted.iter().sum::<f64>() / n as f64;
        let variance = sorted.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        Self {
            best: sorted[0],
            median,
            worst: sorted[n - 1],
            mean,
            std: variance.sqrt(),
            total_evaluations,
            wall_time,
        }
    }
}

/// Trace CSV path for one seed under `prefix`.
pub fn trace_path(prefix: &str, seed: u64) -> PathBuf {
    PathBuf::from(format!("{prefix}_seed{seed}.csv"))
}

/// Summary JSON path under `prefix`.
pub fn summary_path(prefix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}_summary.json"))
}

/// Runs every seed in order, writes one trace CSV per seed plus a summary
/// JSON, and returns the per-seed results with the aggregate stats.
///
/// Each run is independent: the configured engine is cloned with the
/// run's seed patched in, so results depend only on (config, seed). A
/// failing seed aborts the batch and is named in the error. Any parent
/// directory in the output prefix must already exist.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(Vec<RunResult>, SummaryStats)> {
    let started = Instant::now();
    let benchmark = config.benchmark_instance();
    let bounds = benchmark.default_bounds();
    let mut results = Vec::with_capacity(config.seeds.len());
    for &seed in &config.seeds {
        let result = match &config.engine {
            EngineConfig::Sfs(engine) => {
                let per_run = sfs::SfsConfig {
                    seed,
                    ..engine.clone()
                };
                sfs::run(&per_run, &benchmark, &bounds)
            }
            EngineConfig::Fs(engine) => {
                let per_run = fractal::FsConfig {
                    seed,
                    ..engine.clone()
                };
                fractal::fs_run(&per_run, &benchmark, &bounds)
            }
        }
        .map_err(|source| HarnessError::Run { seed, source })?;
        write_trace(&result.trace, &trace_path(&config.output_prefix, seed))?;
        results.push(result);
    }

    let finals: Vec<f64> = results
        .iter()
        .map(|result| {
            result
                .best_point
                .known_fitness()
                .expect("run results carry evaluated best points")
        })
        .collect();
    let total_evaluations = results.iter().map(|result| result.evaluations).sum();
    let stats = SummaryStats::from_finals(&finals, total_evaluations, started.elapsed());

    let path = summary_path(&config.output_prefix);
    let mut json = serde_json::to_string_pretty(&stats).expect("stats serialize to JSON");
    json.push('\n');
    std::fs::write(&path, json).map_err(|source| HarnessError::Io { path, source })?;
    Ok((results, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use crate::trace_io::read_trace;
    use sfs_core::rng::{RandomSource, SeededRng};

    fn run_in_temp(document: &str) -> (tempfile::TempDir, Vec<RunResult>, SummaryStats) {
        let dir = tempfile::tempdir().unwrap();
        let prefix = dir.path().join("exp");
        let doc = format!("{document}\nout = {}\n", prefix.display());
        let config = parse_config(&doc).unwrap();
        let (results, stats) = run_experiment(&config).unwrap();
        (dir, results, stats)
    }

    #[test]
    fn single_seed_stats_collapse() {
        let stats = SummaryStats::from_finals(&[0.25], 400, Duration::from_millis(3));
        assert_eq!(stats.best, 0.25);
        assert_eq!(stats.median, 0.25);
        assert_eq!(stats.worst, 0.25);
        assert_eq!(stats.mean, 0.25);
        assert_eq!(stats.std, 0.0);
        assert_eq!(stats.total_evaluations, 400);
    }

    #[test]
    fn stats_are_order_invariant() {
        let finals = [3.0, 1.0, 2.0, 5.0, 4.0];
        let shuffled = [5.0, 2.0, 4.0, 1.0, 3.0];
        let a = SummaryStats::from_finals(&finals, 10, Duration::ZERO);
        let b = SummaryStats::from_finals(&shuffled, 10, Duration::ZERO);
        assert_eq!(a, b);
        assert_eq!(a.median, 3.0);
        assert!(a.best <= a.median && a.median <= a.worst);
    }

    #[test]
    fn even_sample_median_averages_the_middle_pair() {
        let stats = SummaryStats::from_finals(&[4.0, 1.0, 3.0, 2.0], 0, Duration::ZERO);
        assert_eq!(stats.median, 2.5);
    }

    // Second opinion on the statistics: counting-based median selection and
    // a shifted two-pass variance, agreeing to 1e-12 relative.
    #[test]
    fn stats_match_an_independent_recomputation() {
        let mut rng = SeededRng::new(505);
        for _ in 0..200 {
            let n = 1 + (rng.uniform() * 12.0) as usize;
            let finals: Vec<f64> = (0..n).map(|_| rng.normal() * 100.0).collect();
            let stats = SummaryStats::from_finals(&finals, 0, Duration::ZERO);

            let smallest = finals.iter().copied().fold(f64::INFINITY, f64::min);
            let largest = finals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let nth = |k: usize| {
                // k-th order statistic by counting, no shared sort code.
                *finals
                    .iter()
                    .find(|candidate| {
                        let below = finals.iter().filter(|x| x < candidate).count();
                        let equal_upto = finals
                            .iter()
                            .take_while(|x| !std::ptr::eq(*x, *candidate))
                            .filter(|x| *x == *candidate)
                            .count();
                        below + equal_upto == k
                    })
                    .unwrap()
            };
            let median = if n % 2 == 1 {
                nth(n / 2)
            } else {
                (nth(n / 2 - 1) + nth(n / 2)) / 2.0
            };
            let shift = finals[0];
            let mean = shift + finals.iter().map(|x| x - shift).sum::<f64>() / n as f64;
            let variance = finals.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;

            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
            assert_eq!(stats.best, smallest);
            assert_eq!(stats.worst, largest);
            assert!(close(stats.median, median), "{} vs {median}", stats.median);
            assert!(close(stats.mean, mean), "{} vs {mean}", stats.mean);
            assert!(
                close(stats.std, variance.sqrt()),
                "{} vs {}",
                stats.std,
                variance.sqrt()
            );
        }
    }

    #[test]
    fn experiment_writes_traces_and_summary() {
        let (dir, results, stats) = run_in_temp(
            "algorithm = sfs\nbenchmark = sphere\ndim = 2\npop = 8\ngenerations = 5\nseeds = 1, 2",
        );
        assert_eq!(results.len(), 2);
        for (seed, result) in [(1u64, &results[0]), (2, &results[1])] {
            let path = dir.path().join(format!("exp_seed{seed}.csv"));
            let trace = read_trace(&path).unwrap();
            assert_eq!(&trace, &result.trace);
            assert_eq!(trace.len(), 5);
        }
        let summary = std::fs::read_to_string(dir.path().join("exp_summary.json")).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&summary).unwrap();
        assert_eq!(parsed["best"].as_f64().unwrap(), stats.best);
        assert_eq!(parsed["total_evaluations"].as_u64().unwrap(), stats.total_evaluations);
        assert!(parsed.get("wall_time").is_none());
    }

    #[test]
    fn permuting_seeds_keeps_per_seed_results_and_stats() {
        let base = "algorithm = fs\nbenchmark = rastrigin\ndim = 3\npop = 10\ngenerations = 4\n";
        let (_dir_a, results_a, stats_a) = run_in_temp(&format!("{base}seeds = 1, 2, 3"));
        let (_dir_b, results_b, stats_b) = run_in_temp(&format!("{base}seeds = 3, 1, 2"));
        assert_eq!(results_a[0], results_b[1]);
        assert_eq!(results_a[1], results_b[2]);
        assert_eq!(results_a[2], results_b[0]);
        // Identical up to wall time, which is measured, not derived.
        assert_eq!(
            serde_json::to_string(&stats_a).unwrap(),
            serde_json::to_string(&stats_b).unwrap()
        );
    }

    #[test]
    fn unwritable_prefix_surfaces_the_path() {
        let config = parse_config(
            "algorithm = sfs\nbenchmark = sphere\npop = 5\ngenerations = 1\nseeds = 1\nout = /nonexistent-dir/exp\n",
        )
        .unwrap();
        let err = run_experiment(&config).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("/nonexistent-dir/exp"), "{err}");
    }
}
