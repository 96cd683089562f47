use thiserror::Error;

use crate::model::ModelError;
use crate::observables::ObservableError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Observable(#[from] ObservableError),

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("series mismatch: {0}")]
    GridMismatch(String),
}
