//! Metaheuristic optimization with Fractal Search and Stochastic Fractal
//! Search.
//!
//! Both algorithms minimize a pluggable [`Objective`] over box [`Bounds`].
//! Stochastic Fractal Search ([`sfs::run`]) alternates Gaussian-walk
//! diffusion with two rank-gated update processes under greedy acceptance;
//! Fractal Search ([`fractal::fs_run`]) grows energy-carrying particles by
//! levy or Gaussian steps and keeps the fittest survivors.
//!
//! Runs are fully reproducible: all randomness derives from a single 64-bit
//! seed through per-point substreams, so the same configuration yields the
//! same [`RunResult`] whether phases execute sequentially or in parallel
//! (rayon, behind the default `parallel` feature).
//!
//! ```
//! use sfs_core::{sfs, Bounds, FnObjective};
//!
//! let objective = FnObjective::new(2, |x: &[f64]| x.iter().map(|v| v * v).sum());
//! let bounds = Bounds::symmetric(-5.0, 5.0, 2).unwrap();
//! let config = sfs::SfsConfig {
//!     population_size: 20,
//!     max_generations: 50,
//!     seed: 7,
//!     ..Default::default()
//! };
//! let result = sfs::run(&config, &objective, &bounds).unwrap();
//! assert!(result.best_point.known_fitness().unwrap() < 1e-3);
//! assert_eq!(result.trace.len(), 50);
//! ```

pub mod benchmarks;
mod bounds;
mod error;
mod exec;
pub mod fractal;
mod objective;
mod point;
mod population;
pub mod rng;
pub mod sfs;
mod trace;
pub mod walks;

pub use bounds::{initialize_point, repair, Bounds};
pub use error::{Error, Result};
pub use exec::ExecutionMode;
pub use objective::{FnObjective, Objective};
pub use point::Point;
pub use population::{rank_probabilities, Population};
pub use trace::{ConvergenceTrace, RunResult, SearchPhase, TraceRecord};
