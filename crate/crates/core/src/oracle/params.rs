use serde::Serialize;

use crate::model::{ModelConfig, NonlinearityKind};

/// Field frequency used when mapping a [`ModelConfig`] onto explicit atomic
/// and field frequencies. Observables in the rotating frame do not depend on it.
pub const DEFAULT_FIELD_OMEGA: f64 = 1.0;

/// Unreduced parameters of the full Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleParams {
    /// Atomic level energies ω₁..ω₄ (|1⟩ top, |4⟩ ground).
    pub omega: [f64; 4],
    pub field_omega: f64,
    /// Couplings for 1↔2, 1↔3, 2↔4, 3↔4.
    pub lambdas: [f64; 4],
    pub chi: f64,
    pub k: u32,
    pub nonlinearity: NonlinearityKind,
}

impl OracleParams {
    /// Frequencies reproducing the config's detunings with `ω₄ = 0`.
    pub fn from_model(config: &ModelConfig, field_omega: f64) -> Self {
        let kw = f64::from(config.k) * field_omega;
        let w2 = kw - config.delta3;
        let w1 = w2 + kw - config.delta1;
        Self {
            omega: [w1, w2, w2, 0.0],
            field_omega,
            lambdas: [config.lambda; 4],
            chi: config.chi,
            k: config.k,
            nonlinearity: config.nonlinearity.clone(),
        }
    }

    /// `Δ₁ = ω₂−ω₁+kΩ`, `Δ₂ = ω₃−ω₁+kΩ`, `Δ₃ = ω₄−ω₂+kΩ`, `Δ₄ = ω₄−ω₃+kΩ`.
    pub fn detunings(&self) -> [f64; 4] {
        let kw = f64::from(self.k) * self.field_omega;
        let w = self.omega;
        [w[1] - w[0] + kw, w[2] - w[0] + kw, w[3] - w[1] + kw, w[3] - w[2] + kw]
    }

    /// The degenerate model, when `ω₂ = ω₃` and all couplings coincide.
    pub fn to_model(&self, alpha: num_complex::Complex64) -> Option<ModelConfig> {
        let l = self.lambdas[0];
        if self.omega[1] != self.omega[2] || self.lambdas.iter().any(|&x| x != l) {
            return None;
        }
        let d = self.detunings();
        Some(ModelConfig {
            lambda: l,
            chi: self.chi,
            delta1: d[0],
            delta3: d[2],
            k: self.k,
            alpha,
            nonlinearity: self.nonlinearity.clone(),
        })
    }

    /// Free-evolution phases `γ₁..γ₄` for the subspace seeded by `|1,n⟩`.
    pub fn gammas(&self, n: u64) -> [f64; 4] {
        let k = u64::from(self.k);
        let w = self.omega;
        let om = self.field_omega;
        [
            w[0] + om * n as f64,
            w[1] + om * (n + k) as f64,
            w[2] + om * (n + k) as f64,
            w[3] + om * (n + 2 * k) as f64,
        ]
    }
}
