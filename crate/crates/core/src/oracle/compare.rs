use std::fmt;

use serde::Serialize;

use super::OracleError;
use crate::observables::{ObservableRecord, TimeSeries};

#[derive(Clone, Debug, Serialize)]
pub struct ColumnDeviation {
    pub column: String,
    pub max_abs: f64,
    pub worst_t: f64,
}

/// Per-column agreement between two series sampled on the same grid.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub tolerance: f64,
    pub columns: Vec<ColumnDeviation>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.columns.iter().all(|c| c.max_abs <= self.tolerance)
    }

    pub fn max_deviation(&self) -> f64 {
        self.columns.iter().map(|c| c.max_abs).fold(0.0, f64::max)
    }

    pub fn column(&self, name: &str) -> Option<&ColumnDeviation> {
        self.columns.iter().find(|c| c.column == name)
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tolerance {:.3e}: {}", self.tolerance, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.columns {
            let mark = if c.max_abs <= self.tolerance { "ok" } else { "FAIL" };
            writeln!(f, "  {:<12} max |Δ| = {:.3e} at t = {:.4} {mark}", c.column, c.max_abs, c.worst_t)?;
        }
        Ok(())
    }
}

/// Compares every observable column except `t`. NaN deviations count as failures.
pub fn compare(closed: &TimeSeries, oracle: &TimeSeries, tol: f64) -> Result<ComparisonReport, OracleError> {
    if closed.records.len() != oracle.records.len() {
        return Err(OracleError::GridMismatch(format!(
            "{} vs {} records",
            closed.records.len(),
            oracle.records.len()
        )));
    }
    for (a, b) in closed.records.iter().zip(&oracle.records) {
        if (a.t - b.t).abs() > 1e-12 * a.t.abs().max(1.0) {
            return Err(OracleError::GridMismatch(format!("t = {} vs {}", a.t, b.t)));
        }
    }
    let columns = ObservableRecord::COLUMNS
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, name)| {
            let mut worst = ColumnDeviation { column: name.to_string(), max_abs: 0.0, worst_t: 0.0 };
            for (a, b) in closed.records.iter().zip(&oracle.records) {
                let d = (a.values()[i] - b.values()[i]).abs();
                let d = if d.is_nan() { f64::INFINITY } else { d };
                if d > worst.max_abs {
                    worst.max_abs = d;
                    worst.worst_t = a.t;
                }
            }
            worst
        })
        .collect();
    Ok(ComparisonReport { tolerance: tol, columns })
}
