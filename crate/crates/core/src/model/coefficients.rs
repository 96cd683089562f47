use serde::Serialize;

use super::{ModelConfig, ModelError, NonlinearityKind};
use crate::sum::CompensatedSum;

/// Effective couplings and Kerr shifts for the closed subspace
/// `{|1,n⟩, |2,n+k⟩, |3,n+k⟩, |4,n+2k⟩}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InteractionCoefficients {
    pub n: u64,
    /// `|1,n⟩ ↔ |2,n+k⟩` (and `|3,n+k⟩`) coupling.
    pub f: f64,
    /// `|2,n+k⟩ ↔ |4,n+2k⟩` (and via `|3,n+k⟩`) coupling.
    pub g: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubicCoefficients {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// `λ · sqrt((hi)!/(lo)!) · [f(hi)]!/[f(lo)]!`, accumulated as a log ratio.
fn ladder_matrix_element(
    lambda: f64,
    kind: &NonlinearityKind,
    lo: u64,
    hi: u64,
) -> Result<f64, ModelError> {
    let mut ln = CompensatedSum::new();
    for m in lo + 1..=hi {
        ln.add(0.5 * (m as f64).ln());
        ln.add(kind.ln_value(m)?);
    }
    let v = lambda * ln.value().exp();
    if !v.is_finite() || v == 0.0 {
        return Err(ModelError::NumericRange(format!(
            "coupling between Fock {lo} and {hi} is exp({}) times lambda",
            ln.value()
        )));
    }
    Ok(v)
}

fn kerr_shift(chi: f64, m: u64) -> f64 {
    let m = m as f64;
    chi * m * (m - 1.0)
}

pub fn interaction_coeffs(
    config: &ModelConfig,
    n: u64,
) -> Result<InteractionCoefficients, ModelError> {
    let k = u64::from(config.k);
    let kind = &config.nonlinearity;
    Ok(InteractionCoefficients {
        n,
        f: ladder_matrix_element(config.lambda, kind, n, n + k)?,
        g: ladder_matrix_element(config.lambda, kind, n + k, n + 2 * k)?,
        v1: kerr_shift(config.chi, n),
        v2: kerr_shift(config.chi, n + k),
        v3: kerr_shift(config.chi, n + 2 * k),
    })
}

/// Coefficients of the monic characteristic cubic `μ³ + x₁μ² + x₂μ + x₃`.
pub fn cubic_coeffs(ic: &InteractionCoefficients, delta1: f64, delta3: f64) -> CubicCoefficients {
    let InteractionCoefficients { f, g, v1, v2, v3, .. } = *ic;
    let (f2, g2) = (f * f, g * g);
    CubicCoefficients {
        x1: v1 + v2 + v3 - delta1 - 2.0 * delta3,
        x2: -2.0 * (f2 + g2) + v1 * v2 + v1 * v3 + v2 * v3
            - delta3 * (v1 + v3)
            - (delta1 + delta3) * (v2 + v3 - delta3),
        x3: -2.0 * v3 * f2 + (delta1 + delta3 - v1) * (2.0 * g2 + v3 * delta3 - v3 * v2),
    }
}
