use num_complex::Complex64;

use super::{ClosedFormSolution, ObservableError, ReducedDensityMatrix};
use crate::model::ModelConfig;

pub fn reduced_density(
    config: &ModelConfig,
    t: f64,
    nmax: u64,
) -> Result<ReducedDensityMatrix, ObservableError> {
    Ok(ClosedFormSolution::new(config, nmax)?.snapshot(t).density())
}

pub fn photon_moments(config: &ModelConfig, t: f64, nmax: u64) -> Result<(f64, f64), ObservableError> {
    Ok(ClosedFormSolution::new(config, nmax)?.snapshot(t).photon_moments())
}

pub fn field_moment(
    config: &ModelConfig,
    t: f64,
    r: usize,
    nmax: u64,
) -> Result<Complex64, ObservableError> {
    Ok(ClosedFormSolution::new(config, nmax)?.snapshot(t).field_moment(r))
}

pub fn squeezing(config: &ModelConfig, t: f64, nmax: u64) -> Result<(f64, f64), ObservableError> {
    Ok(ClosedFormSolution::new(config, nmax)?.snapshot(t).squeezing())
}

/// Mandel `Q = (⟨n²⟩ − ⟨n⟩²)/⟨n⟩ − 1`.
pub fn mandel_q(mean_n: f64, mean_n2: f64) -> Result<f64, ObservableError> {
    if !(mean_n > 0.0) {
        return Err(ObservableError::UndefinedStatistic(format!(
            "Mandel Q needs a positive mean photon number, got {mean_n}"
        )));
    }
    Ok((mean_n2 - mean_n * mean_n) / mean_n - 1.0)
}
