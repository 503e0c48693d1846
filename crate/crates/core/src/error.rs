use thiserror::Error;

/// Errors raised by the polynomial machinery, the operators and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    /// The normalization P_n(1) of a residual polynomial is numerically zero.
    #[error("normalization value of the degree-{degree} polynomial vanishes")]
    NormalizationVanishes { degree: usize },

    /// A denominator of the normalization recursion crossed zero.
    #[error("normalization recursion diverges at index {index} (denominator {denominator:e})")]
    DivergentNormalization { index: usize, denominator: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: impl ToString, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            reason,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
