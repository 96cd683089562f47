use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub t: f64,
    pub n: Option<u64>,
    pub message: String,
}

impl std::fmt::Display for PointFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.n {
            Some(n) => write!(f, "t = {}, n = {}: {}", self.t, n, self.message),
            None => write!(f, "t = {}: {}", self.t, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObservableError {
    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("invariant violated at t = {t}: {what}")]
    Invariant { t: f64, what: String },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("{} grid point(s) failed; first: {}", .0.len(), .0[0])]
    Series(Vec<PointFailure>),
}

impl ObservableError {
    pub(crate) fn into_failure(self, t: f64) -> PointFailure {
        let n = match &self {
            ObservableError::Model(ModelError::DegenerateSpectrum { n, .. }) => Some(*n),
            _ => None,
        };
        PointFailure {
            t,
            n,
            message: self.to_string(),
        }
    }
}
