use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("nonlinearity table has {len} entries, index {index} requested")]
    TableIndex { index: u64, len: usize },

    #[error("value out of representable range: {0}")]
    NumericRange(String),

    #[error("degenerate spectrum at n = {n}: {reason}")]
    DegenerateSpectrum { n: u64, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl ModelError {
    pub(crate) fn degenerate(reason: impl Into<String>) -> Self {
        ModelError::DegenerateSpectrum {
            n: u64::MAX,
            reason: reason.into(),
        }
    }

    /// Attach the Fock index to a degenerate-spectrum error raised deeper down.
    pub(crate) fn at_index(self, n: u64) -> Self {
        match self {
            ModelError::DegenerateSpectrum { reason, .. } => {
                ModelError::DegenerateSpectrum { n, reason }
            }
            other => other,
        }
    }
}
