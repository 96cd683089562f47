use serde::{Deserialize, Serialize};

use super::ModelError;

/// Intensity dependence `f(n)` of the deformed ladder operators `A = a f(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NonlinearityKind {
    /// `f(n) = 1`: ordinary Jaynes–Cummings coupling.
    Constant,
    /// `f(n) = 1/sqrt(n)` with `f(0) = 1`.
    Harmonious,
    /// Explicit values `f(0), f(1), ...`; all strictly positive and finite.
    Tabulated(Vec<f64>),
}

impl NonlinearityKind {
    pub fn tabulated(values: Vec<f64>) -> Result<Self, ModelError> {
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(ModelError::InvalidConfig(format!(
                "tabulated f({i}) = {v} must be positive and finite"
            )));
        }
        Ok(NonlinearityKind::Tabulated(values))
    }

    pub fn name(&self) -> &'static str {
        match self {
            NonlinearityKind::Constant => "constant",
            NonlinearityKind::Harmonious => "harmonious",
            NonlinearityKind::Tabulated(_) => "tabulated",
        }
    }

    /// `ln f(n)`. Harmonious is evaluated analytically so that
    /// `ln sqrt(n) + ln f(n)` cancels to exactly zero.
    pub fn ln_value(&self, n: u64) -> Result<f64, ModelError> {
        match self {
            NonlinearityKind::Constant => Ok(0.0),
            NonlinearityKind::Harmonious => Ok(if n == 0 { 0.0 } else { -0.5 * (n as f64).ln() }),
            NonlinearityKind::Tabulated(values) => Ok(table_entry(values, n)?.ln()),
        }
    }
}

fn table_entry(values: &[f64], n: u64) -> Result<f64, ModelError> {
    usize::try_from(n)
        .ok()
        .and_then(|i| values.get(i))
        .copied()
        .ok_or(ModelError::TableIndex {
            index: n,
            len: values.len(),
        })
}

pub fn f_deform(kind: &NonlinearityKind, n: u64) -> Result<f64, ModelError> {
    match kind {
        NonlinearityKind::Constant => Ok(1.0),
        NonlinearityKind::Harmonious => Ok(if n == 0 { 1.0 } else { 1.0 / (n as f64).sqrt() }),
        NonlinearityKind::Tabulated(values) => table_entry(values, n),
    }
}

/// `ln [f(n)]! = ln f(1) + ... + ln f(n)`, accumulated in ascending order.
pub fn ln_f_factorial(kind: &NonlinearityKind, n: u64) -> Result<f64, ModelError> {
    let mut acc = crate::sum::CompensatedSum::new();
    for m in 1..=n {
        acc.add(kind.ln_value(m)?);
    }
    Ok(acc.value())
}

/// `[f(n)]! = f(n) f(n-1) ... f(1)` with `[f(0)]! = 1`.
pub fn f_factorial(kind: &NonlinearityKind, n: u64) -> Result<f64, ModelError> {
    let ln = ln_f_factorial(kind, n)?;
    let v = ln.exp();
    if !v.is_finite() || v == 0.0 {
        return Err(ModelError::NumericRange(format!(
            "[f({n})]! = exp({ln}) for {} nonlinearity",
            kind.name()
        )));
    }
    Ok(v)
}
