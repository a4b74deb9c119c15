//! Experiment harness for the fractal search engines: `key = value` config
//! documents, seeded multi-run batches, convergence-trace CSVs, and summary
//! statistics.
//!
//! The `sfs` binary fronts this library. A batch is described by an
//! [`ExperimentConfig`] (usually parsed from a document via
//! [`parse_config`]), executed by [`run_experiment`], and lands on disk as
//! one `<prefix>_seed<seed>.csv` per seed plus `<prefix>_summary.json`.
//! Batches are reproducible artifacts: rerunning the same config writes
//! byte-identical files.

mod config;
mod error;
mod runner;
mod trace_io;

pub use config::{
    apply_override, config_from_pairs, parse_config, parse_document, Algorithm, EngineConfig,
    ExperimentConfig,
};
pub use error::{HarnessError, Result};
pub use runner::{run_experiment, summary_path, trace_path, SummaryStats};
pub use trace_io::{parse_trace, read_trace, render_trace, write_trace, TRACE_HEADER};
