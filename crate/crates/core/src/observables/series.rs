use rayon::prelude::*;
use serde::Serialize;

use super::{ClosedFormSolution, ObservableError, PointFailure};
use crate::model::ModelConfig;

/// Observables at one scaled time `λt`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ObservableRecord {
    pub t: f64,
    pub entropy: f64,
    pub concurrence: f64,
    pub mandel: f64,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub sx: f64,
    pub sy: f64,
}

impl ObservableRecord {
    pub const COLUMNS: [&'static str; 8] =
        ["t", "entropy", "concurrence", "mandel_q", "mean_n", "mean_n2", "sx", "sy"];

    /// Values in [`Self::COLUMNS`] order.
    pub fn values(&self) -> [f64; 8] {
        [
            self.t,
            self.entropy,
            self.concurrence,
            self.mandel,
            self.mean_n,
            self.mean_n2,
            self.sx,
            self.sy,
        ]
    }

    pub fn check(&self, tol: f64) -> Result<(), ObservableError> {
        let mut bad = Vec::new();
        if !self.values().iter().all(|v| v.is_finite()) {
            bad.push("non-finite value".to_string());
        }
        if self.entropy < -tol || self.entropy > 0.75 + tol {
            bad.push(format!("linear entropy {} outside [0, 0.75]", self.entropy));
        }
        if self.concurrence < 0.0 {
            bad.push(format!("concurrence {} < 0", self.concurrence));
        }
        if self.mandel < -1.0 - tol {
            bad.push(format!("Mandel Q {} < -1", self.mandel));
        }
        if self.sx < -1.0 - tol || self.sy < -1.0 - tol {
            bad.push(format!("squeezing ({}, {}) below -1", self.sx, self.sy));
        }
        let var = self.mean_n2 - self.mean_n * self.mean_n;
        if var < -tol * self.mean_n2.max(1.0) {
            bad.push(format!("negative photon-number variance {var:e}"));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(ObservableError::Invariant { t: self.t, what: bad.join("; ") })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimeSeries {
    pub config: ModelConfig,
    pub nmax: u64,
    pub records: Vec<ObservableRecord>,
}

impl TimeSeries {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.t)
    }

    /// One column by its CSV name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = ObservableRecord::COLUMNS.iter().position(|c| *c == name)?;
        Some(self.records.iter().map(|r| r.values()[idx]).collect())
    }
}

/// `steps` equally spaced points on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    let last = steps.saturating_sub(1).max(1) as f64;
    (0..steps).map(|i| t_max * i as f64 / last).collect()
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<(), ObservableError> {
    match grid.first() {
        None => return Err(ObservableError::InvalidGrid("empty".into())),
        Some(&t0) if t0 != 0.0 => {
            return Err(ObservableError::InvalidGrid(format!("starts at {t0}, not 0")))
        }
        _ => {}
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(ObservableError::InvalidGrid(format!(
            "not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

impl ClosedFormSolution {
    /// Records at each grid point, evaluated in parallel and merged in grid
    /// order. Every failing point is reported.
    pub fn series(&self, grid: &[f64]) -> Result<TimeSeries, ObservableError> {
        check_grid(grid)?;
        let results: Vec<Result<_, PointFailure>> = grid
            .par_iter()
            .map(|&t| self.snapshot(t).record().map_err(|e| e.into_failure(t)))
            .collect();
        let mut records = Vec::with_capacity(grid.len());
        let mut failures = Vec::new();
        for r in results {
            match r {
                Ok(rec) => records.push(rec),
                Err(f) => failures.push(f),
            }
        }
        if !failures.is_empty() {
            return Err(ObservableError::Series(failures));
        }
        Ok(TimeSeries {
            config: self.config().clone(),
            nmax: self.nmax(),
            records,
        })
    }
}

pub fn evolve_series(config: &ModelConfig, t_grid: &[f64]) -> Result<TimeSeries, ObservableError> {
    check_grid(t_grid)?;
    let solution = ClosedFormSolution::with_default_truncation(config).map_err(|e| match e {
        ObservableError::Model(m) => ObservableError::Series(vec![ObservableError::Model(m).into_failure(0.0)]),
        other => other,
    })?;
    solution.series(t_grid)
}
