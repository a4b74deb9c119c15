//! Pairs SFS against FS on rastrigin d=10 under a matched evaluation
//! budget: each FS run receives at least as many evaluations as the SFS
//! run with the same seed, then the final best fitnesses are compared.

use sfs_core::benchmarks::{Benchmark, BenchmarkKind};
use sfs_core::fractal::{fs_run, FsConfig};
use sfs_core::sfs::{run, SfsConfig};
use sfs_core::Objective;

fn main() {
    let benchmark = Benchmark::new(BenchmarkKind::Rastrigin, 10).unwrap();
    let bounds = benchmark.default_bounds();
    let fs_base = FsConfig::default();
    let per_generation = (fs_base.initial_population * fs_base.offspring_per_particle) as u64;

    let mut sfs_wins = 0;
    let mut sfs_finals = Vec::new();
    let mut fs_finals = Vec::new();
    for seed in 1..=10u64 {
        let sfs_config = SfsConfig {
            max_generations: 200,
            seed,
            ..SfsConfig::default()
        };
        let sfs_result = run(&sfs_config, &benchmark, &bounds).unwrap();

        let budget = sfs_result
            .evaluations
            .saturating_sub(fs_base.initial_population as u64);
        let fs_config = FsConfig {
            max_generations: budget.div_ceil(per_generation) as u32,
            seed,
            ..fs_base.clone()
        };
        let fs_result = fs_run(&fs_config, &benchmark, &bounds).unwrap();
        assert!(
            fs_result.evaluations >= sfs_result.evaluations,
            "budget matching must not shortchange fs"
        );

        let sfs_final = sfs_result.best_point.known_fitness().unwrap();
        let fs_final = fs_result.best_point.known_fitness().unwrap();
        if sfs_final < fs_final {
            sfs_wins += 1;
        }
        println!(
            "seed {seed}: sfs {sfs_final:.6e} ({} evals)  fs {fs_final:.6e} ({} evals)",
            sfs_result.evaluations, fs_result.evaluations
        );
        sfs_finals.push(sfs_final);
        fs_finals.push(fs_final);
    }

    let median = |values: &mut Vec<f64>| {
        values.sort_by(f64::total_cmp);
        (values[4] + values[5]) / 2.0
    };
    println!(
        "sfs wins {sfs_wins}/10; medians: sfs {:.6e}  fs {:.6e}",
        median(&mut sfs_finals),
        median(&mut fs_finals)
    );
}
