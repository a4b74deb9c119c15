//! `sfs`: seeded benchmark experiments for the fractal search engines.
//!
//! Exit codes: 0 on success, 1 for configuration errors, 2 for runtime or
//! I/O failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use sfs_harness::{
    apply_override, config_from_pairs, parse_document, run_experiment, summary_path, trace_path,
    HarnessError,
};

#[derive(Parser)]
#[command(
    name = "sfs",
    version,
    about = "Run seeded fractal search experiments over standard benchmark functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)] // one-shot parse, never stored in bulk
enum Command {
    /// Run the experiment described by a config file and/or flags.
    Run(RunArgs),
    /// Print the benchmark registry.
    ListBenchmarks,
}

#[derive(Args)]
struct RunArgs {
    /// Config document: `key = value` lines, `#` comments. Flags below
    /// override keys of the same name.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Search engine, `sfs` or `fs`.
    #[arg(long)]
    algorithm: Option<String>,
    /// Benchmark function name (see `list-benchmarks`).
    #[arg(long)]
    benchmark: Option<String>,
    /// Problem dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Population size.
    #[arg(long)]
    pop: Option<usize>,
    /// Generation budget.
    #[arg(long)]
    generations: Option<u32>,
    /// Diffusion walks per point per generation (sfs only).
    #[arg(long)]
    diffusions: Option<usize>,
    /// Probability of the first Gaussian walk form in [0,1] (sfs only).
    #[arg(long)]
    walk: Option<f64>,
    /// Single seed; shorthand for a one-entry seed list.
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Comma-separated seed list.
    #[arg(long)]
    seeds: Option<String>,
    /// Output path prefix for trace CSVs and the summary JSON.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => match run_command(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::from(err.exit_code())
            }
        },
        Command::ListBenchmarks => {
            list_benchmarks();
            ExitCode::SUCCESS
        }
    }
}

fn run_command(args: RunArgs) -> Result<(), HarnessError> {
    let mut pairs = match &args.config {
        Some(path) => {
            // A bad path is a user-input problem, not a runtime failure.
            let text = std::fs::read_to_string(path).map_err(|err| {
                HarnessError::Invalid(format!("cannot read config `{}`: {err}", path.display()))
            })?;
            parse_document(&text)?
        }
        None => Vec::new(),
    };
    if let Some(value) = args.algorithm {
        apply_override(&mut pairs, "algorithm", value);
    }
    if let Some(value) = args.benchmark {
        apply_override(&mut pairs, "benchmark", value);
    }
    if let Some(value) = args.dim {
        apply_override(&mut pairs, "dim", value.to_string());
    }
    if let Some(value) = args.pop {
        apply_override(&mut pairs, "pop", value.to_string());
    }
    if let Some(value) = args.generations {
        apply_override(&mut pairs, "generations", value.to_string());
    }
    if let Some(value) = args.diffusions {
        apply_override(&mut pairs, "diffusions", value.to_string());
    }
    if let Some(value) = args.walk {
        apply_override(&mut pairs, "walk", value.to_string());
    }
    if let Some(value) = args.seed {
        apply_override(&mut pairs, "seeds", value.to_string());
    }
    if let Some(value) = args.seeds {
        apply_override(&mut pairs, "seeds", value);
    }
    if let Some(value) = args.out {
        apply_override(&mut pairs, "out", value);
    }

    let config = config_from_pairs(pairs)?;
    let (results, stats) = run_experiment(&config)?;

    for (seed, result) in config.seeds.iter().zip(&results) {
        let best = result
            .best_point
            .known_fitness()
            .expect("run results carry evaluated best points");
        println!(
            "seed {seed}: final best {best:e} after {} evaluations, {} generations",
            result.evaluations, result.generations_run
        );
    }
    println!(
        "final best across {} seed(s): best {:e}  median {:e}  worst {:e}  mean {:e}  std {:e}",
        config.seeds.len(),
        stats.best,
        stats.median,
        stats.worst,
        stats.mean,
        stats.std
    );
    println!(
        "total evaluations {}, wall time {:.3?}",
        stats.total_evaluations, stats.wall_time
    );
    println!(
        "wrote {} trace file(s) at {} and {}",
        config.seeds.len(),
        trace_path(&config.output_prefix, config.seeds[0]).display(),
        summary_path(&config.output_prefix).display()
    );
    Ok(())
}

fn list_benchmarks() {
    for spec in sfs_core::benchmarks::list_benchmarks() {
        println!(
            "{:<12} dim {:<3} bounds [{}, {}]  optimum {}",
            spec.name,
            spec.dimension,
            spec.bounds.lower()[0],
            spec.bounds.upper()[0],
            spec.known_optimum_value
        );
    }
}
