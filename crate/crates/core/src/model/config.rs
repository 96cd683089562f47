use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ModelError, NonlinearityKind};

/// Physical parameters of the degenerate model (`ω₂ = ω₃`, all four couplings
/// equal). Only the two independent detunings survive; frequencies are in
/// units of the coupling and time is reported as `λt`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub lambda: f64,
    pub chi: f64,
    pub delta1: f64,
    pub delta3: f64,
    pub k: u32,
    pub alpha: Complex64,
    pub nonlinearity: NonlinearityKind,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            chi: 0.0,
            delta1: 0.0,
            delta3: 0.0,
            k: 1,
            alpha: Complex64::new(10f64.sqrt(), 0.0),
            nonlinearity: NonlinearityKind::Constant,
        }
    }
}

impl ModelConfig {
    /// Real coherent amplitude with the given mean photon number `|α|²`.
    pub fn with_mean_photons(mut self, alpha2: f64) -> Self {
        self.alpha = Complex64::new(alpha2.max(0.0).sqrt(), 0.0);
        self
    }

    pub fn mean_photons(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::InvalidConfig(msg));
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return bad(format!("lambda must be positive, got {}", self.lambda));
        }
        if !(self.chi.is_finite() && self.chi >= 0.0) {
            return bad(format!("chi must be non-negative, got {}", self.chi));
        }
        if !self.delta1.is_finite() || !self.delta3.is_finite() {
            return bad("detunings must be finite".into());
        }
        if self.k == 0 {
            return bad("photon multiplicity k must be at least 1".into());
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return bad("alpha must be finite".into());
        }
        if let NonlinearityKind::Tabulated(values) = &self.nonlinearity {
            NonlinearityKind::tabulated(values.clone())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = ModelConfig::default();
        c.validate().unwrap();
        assert!((c.mean_photons() - 10.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_values() {
        let base = ModelConfig::default();
        for c in [
            ModelConfig { lambda: 0.0, ..base.clone() },
            ModelConfig { chi: -0.1, ..base.clone() },
            ModelConfig { k: 0, ..base.clone() },
            ModelConfig { delta1: f64::INFINITY, ..base.clone() },
            ModelConfig { alpha: Complex64::new(f64::NAN, 0.0), ..base.clone() },
        ] {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
