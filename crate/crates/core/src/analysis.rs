//! Re-evaluation of finished optimisers: cross-function and
//! cross-dimension tables, and summaries of per-run results.

use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::benchmark::{BenchmarkError, BenchmarkFunction, BenchmarkId, ShiftSource};
use crate::evaluator::{fitness, EvaluationConfig};
use crate::push::Program;

/// Restarts used when re-evaluating finished optimisers.
pub const REEVALUATION_REPEATS: usize = 25;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("no values to summarise")]
    Empty,
    #[error(transparent)]
    Benchmark(#[from] BenchmarkError),
}

/// Default settings for re-evaluation: standard moves and budget, 25
/// restarts.
pub fn reevaluation_config(seed: u64) -> EvaluationConfig {
    EvaluationConfig {
        repeats: REEVALUATION_REPEATS,
        seed,
        ..EvaluationConfig::default()
    }
}

/// Labelled table of mean best errors.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub corner: String,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub cells: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{},{}", self.corner, self.column_labels.join(","));
        for (label, row) in self.row_labels.iter().zip(&self.cells) {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:e}")).collect();
            let _ = writeln!(out, "{},{}", label, cells.join(","));
        }
        out
    }

    /// Aligned plain-text rendering with three significant digits.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<Vec<String>> = vec![std::iter::once(self.corner.clone())
            .chain(self.column_labels.iter().cloned())
            .collect()];
        for (label, row) in self.row_labels.iter().zip(&self.cells) {
            rows.push(
                std::iter::once(label.clone())
                    .chain(row.iter().map(|c| format!("{c:.2e}")))
                    .collect(),
            );
        }
        let columns = rows[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (cell, w))| {
                    if i == 0 {
                        format!("{cell:>w$}")
                    } else {
                        format!("{cell:<w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

/// Rows are programs, columns are evaluation functions.
pub type GeneralityMatrix = Table;

/// Evaluates every program on every function with `cfg` (same seed for
/// every cell, so all programs face the same starting points).
pub fn generality_matrix(
    programs: &[(String, Program)],
    functions: &[BenchmarkFunction],
    cfg: &EvaluationConfig,
) -> GeneralityMatrix {
    let cells: Vec<Vec<f64>> = programs
        .par_iter()
        .map(|(_, program)| {
            functions
                .par_iter()
                .map(|f| fitness(program, f, cfg).mean_best_error)
                .collect()
        })
        .collect();
    Table {
        corner: "trained_on".into(),
        row_labels: programs.iter().map(|(l, _)| l.clone()).collect(),
        column_labels: functions.iter().map(|f| f.id.to_string()).collect(),
        cells,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionalitySweep {
    pub label: String,
    pub function: BenchmarkId,
    pub dimensions: Vec<usize>,
    pub cells: Vec<f64>,
}

/// Dimensions reported by default.
pub const SWEEP_DIMENSIONS: [usize; 4] = [2, 10, 15, 20];

/// Mean best error of one program on `function` at each dimension, with
/// the same move budget throughout.
pub fn dimensionality_sweep(
    label: &str,
    program: &Program,
    function: BenchmarkId,
    dimensions: &[usize],
    shifts: &ShiftSource,
    cfg: &EvaluationConfig,
) -> Result<DimensionalitySweep, AnalysisError> {
    let functions = dimensions
        .iter()
        .map(|&d| BenchmarkFunction::from_source(function, d, shifts))
        .collect::<Result<Vec<_>, _>>()?;
    let cells = functions
        .par_iter()
        .map(|f| fitness(program, f, cfg).mean_best_error)
        .collect();
    Ok(DimensionalitySweep {
        label: label.to_string(),
        function,
        dimensions: dimensions.to_vec(),
        cells,
    })
}

/// Stacks sweeps into one table (rows: programs, columns: dimensions).
///
/// # Panics
/// If the sweeps do not share the same dimensions.
pub fn sweep_table(sweeps: &[DimensionalitySweep]) -> Table {
    let dims = sweeps.first().map(|s| s.dimensions.clone()).unwrap_or_default();
    assert!(sweeps.iter().all(|s| s.dimensions == dims), "mixed dimensions");
    Table {
        corner: "trained_on".into(),
        row_labels: sweeps.iter().map(|s| s.label.clone()).collect(),
        column_labels: dims.iter().map(|d| format!("{d}D")).collect(),
        cells: sweeps.iter().map(|s| s.cells.clone()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionSummary {
    pub min: f64,
    pub lower_quartile: f64,
    pub median: f64,
    pub upper_quartile: f64,
    pub max: f64,
    pub threshold: f64,
    /// Values strictly below `threshold`.
    pub below_threshold: usize,
    /// Inputs in ascending order.
    pub values: Vec<f64>,
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else {
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Five-number summary of per-run errors, plus how many runs came in under
/// `threshold`.
pub fn distribution_report(values: &[f64], threshold: f64) -> Result<DistributionSummary, AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(DistributionSummary {
        min: sorted[0],
        lower_quartile: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        upper_quartile: quantile(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        threshold,
        below_threshold: sorted.iter().filter(|&&v| v < threshold).count(),
        values: sorted,
    })
}

impl DistributionSummary {
    pub fn to_text(&self) -> String {
        format!(
            "runs      {}\nmin       {:e}\nq1        {:e}\nmedian    {:e}\nq3        {:e}\nmax       {:e}\nbelow {:e}: {}\n",
            self.values.len(),
            self.min,
            self.lower_quartile,
            self.median,
            self.upper_quartile,
            self.max,
            self.threshold,
            self.below_threshold
        )
    }
}
