//! Reduced atomic state, entanglement and field statistics built from the
//! closed-form amplitudes.

mod density;
mod error;
mod series;
mod solution;
mod statistics;

pub use density::{concurrence, linear_entropy, ReducedDensityMatrix};
pub use error::{ObservableError, PointFailure};
pub use series::{evolve_series, uniform_grid, ObservableRecord, TimeSeries};
pub use solution::{ClosedFormSolution, Snapshot};
pub use statistics::{field_moment, mandel_q, photon_moments, reduced_density, squeezing};

/// Tolerance for Hermiticity, trace, positivity and the record bounds.
pub const INVARIANT_TOL: f64 = 1e-10;
