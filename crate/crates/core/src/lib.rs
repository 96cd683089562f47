//! Exact dynamics of a ◇-type four-level atom coupled to a single quantized
//! field mode through a Kerr medium, with detuning, k-photon transitions and
//! intensity-dependent (f-deformed) coupling.
//!
//! The crate is split into four layers:
//!
//! * [`model`] evaluates the closed-form probability amplitudes for one Fock
//!   index at a time (interaction coefficients, cubic characteristic roots,
//!   partial-fraction weights).
//! * [`observables`] sums those amplitudes over the coherent-state weights to
//!   produce the reduced atomic density matrix, linear entropy, concurrence,
//!   photon statistics and quadrature squeezing.
//! * [`oracle`] is an independent brute-force path: a dense Hamiltonian on a
//!   truncated Fock space, evolved by eigendecomposition, plus a direct
//!   integration of the unreduced four-amplitude equations.
//! * [`cli`] wires scenario presets, config parsing and CSV output together.

pub mod cli;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod sum;

pub use model::{
    AmplitudeSet, BCoefficients, CubicCoefficients, InteractionCoefficients, ModelConfig,
    ModelError, NonlinearityKind, RootTriple,
};
pub use observables::{ObservableRecord, ReducedDensityMatrix, TimeSeries};
