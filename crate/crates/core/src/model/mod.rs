//! Closed-form solution of the degenerate, equal-coupling model.

mod amplitudes;
mod coefficients;
mod coherent;
mod config;
mod cubic;
mod error;
mod nonlinearity;

pub use amplitudes::{amplitudes_at, b_coeffs, AmplitudeSet, BCoefficients, ClosedFormMode};
pub use coefficients::{cubic_coeffs, interaction_coeffs, CubicCoefficients, InteractionCoefficients};
pub use coherent::{coherent_weight, coherent_weights, truncation_bound, DEFAULT_TAIL};
pub use config::ModelConfig;
pub use cubic::{solve_cubic, RootTriple};
pub use error::ModelError;
pub use nonlinearity::{f_deform, f_factorial, ln_f_factorial, NonlinearityKind};
