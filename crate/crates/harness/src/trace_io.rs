//! Convergence-trace CSV persistence.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sfs_core::{ConvergenceTrace, TraceRecord};

use crate::error::{HarnessError, Result};

/// Exact header line of every trace CSV.
pub const TRACE_HEADER: &str = "generation,evaluations,best_fitness,mean_fitness";

/// Renders `trace` as CSV text: the header, then one row per record. Reals
/// use `{}` formatting, which emits the shortest decimal that parses back
/// to the same bits, so [`parse_trace`] inverts this function exactly.
pub fn render_trace(trace: &ConvergenceTrace) -> String {
    let mut out = String::with_capacity(48 * (trace.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for record in trace.records() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            record.generation, record.evaluations, record.best_fitness, record.mean_fitness
        );
    }
    out
}

/// Writes `trace` to `path` as CSV (see [`render_trace`]).
pub fn write_trace(trace: &ConvergenceTrace, path: &Path) -> Result<()> {
    fs::write(path, render_trace(trace)).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a CSV trace file written by [`write_trace`].
pub fn read_trace(path: &Path) -> Result<ConvergenceTrace> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_trace(&text)
}

/// Parses CSV text produced by [`render_trace`]. This is a structural
/// inverse: the header and the number syntax are checked, the engines'
/// monotonicity guarantees are not re-validated.
pub fn parse_trace(text: &str) -> Result<ConvergenceTrace> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first == TRACE_HEADER => {}
        Some((_, first)) => {
            return Err(HarnessError::TraceFormat {
                line: 1,
                reason: format!("expected header `{TRACE_HEADER}`, found `{first}`"),
            })
        }
        None => {
            return Err(HarnessError::TraceFormat {
                line: 1,
                reason: "empty file".to_string(),
            })
        }
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let mut fields = line.split(',');
        let (Some(generation), Some(evaluations), Some(best), Some(mean), None) = (
            fields.next(),
            fields.next(),
            fields.next(),
            fields.next(),
            fields.next(),
        ) else {
            return Err(HarnessError::TraceFormat {
                line: line_no,
                reason: "expected 4 comma-separated fields".to_string(),
            });
        };
        records.push(TraceRecord {
            generation: parse_field(generation, "generation", line_no)?,
            evaluations: parse_field(evaluations, "evaluations", line_no)?,
            best_fitness: parse_field(best, "best_fitness", line_no)?,
            mean_fitness: parse_field(mean, "mean_fitness", line_no)?,
        });
    }
    Ok(ConvergenceTrace::from_records(records))
}

fn parse_field<T: std::str::FromStr>(text: &str, field: &str, line: usize) -> Result<T> {
    text.parse().map_err(|_| HarnessError::TraceFormat {
        line,
        reason: format!("cannot parse `{text}` as {field}"),
    })
}
