use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index → coefficient map. Coefficients are never tabulated.
pub type CoefficientFn = Arc<dyn Fn(usize) -> f64 + Send + Sync>;

/// Number of leading β coefficients checked for positivity when a scheme is
/// built from user supplied closures.
const VALIDATED_PREFIX: usize = 256;

/// Recurrence coefficients (α_n, β_n) of a monic orthogonal polynomial family
///
/// ```text
/// P_{n+1}(x) = (x - α_n) P_n(x) - β_n P_{n-1}(x),  P_0 = 1,  P_1 = x - α_0.
/// ```
#[derive(Clone)]
pub struct RecurrenceScheme {
    alpha: CoefficientFn,
    beta: CoefficientFn,
    symmetric: bool,
    degenerate: bool,
    ultraspherical_nu: Option<f64>,
    label: String,
}

impl RecurrenceScheme {
    /// General (possibly asymmetric) scheme. β_n > 0 is checked on a finite prefix.
    pub fn general(alpha: CoefficientFn, beta: CoefficientFn) -> Result<Self> {
        Self::from_parts(alpha, beta, false, "general".into())
    }

    /// Symmetric scheme (α ≡ 0) with the given β-sequence.
    pub fn symmetric(beta: CoefficientFn) -> Result<Self> {
        Self::from_parts(Arc::new(|_| 0.0), beta, true, "symmetric".into())
    }

    fn from_parts(
        alpha: CoefficientFn,
        beta: CoefficientFn,
        symmetric: bool,
        label: String,
    ) -> Result<Self> {
        for n in 1..=VALIDATED_PREFIX {
            let b = beta(n);
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::invalid("beta", format!("beta({n}) = {b}"), "must be positive"));
            }
        }
        if symmetric {
            // keep the flag honest for closures that were passed in by hand
            debug_assert!((0..VALIDATED_PREFIX).all(|n| alpha(n) == 0.0));
        }
        Ok(Self {
            alpha,
            beta,
            symmetric,
            degenerate: false,
            ultraspherical_nu: None,
            label,
        })
    }

    /// Degenerate pseudo-scheme α ≡ β ≡ 0, i.e. P_n(x) = x^n. Its residual
    /// polynomials are those of the Landweber iteration. It bypasses the
    /// β > 0 invariant and exists for reductions and oracle tests.
    pub fn landweber() -> Self {
        Self {
            alpha: Arc::new(|_| 0.0),
            beta: Arc::new(|_| 0.0),
            symmetric: true,
            degenerate: true,
            ultraspherical_nu: None,
            label: "landweber".into(),
        }
    }

    /// Monic Chebyshev polynomials of the second kind: β ≡ 1/4.
    pub fn chebyshev_u() -> Self {
        Self {
            alpha: Arc::new(|_| 0.0),
            beta: Arc::new(|_| 0.25),
            symmetric: true,
            degenerate: false,
            ultraspherical_nu: Some(1.0),
            label: "chebyshev-u".into(),
        }
    }

    /// Monic Chebyshev polynomials of the first kind: β_1 = 1/2, β_n = 1/4 otherwise.
    pub fn chebyshev_t() -> Self {
        Self {
            alpha: Arc::new(|_| 0.0),
            beta: Arc::new(|n| if n == 1 { 0.5 } else { 0.25 }),
            symmetric: true,
            degenerate: false,
            ultraspherical_nu: Some(0.0),
            label: "chebyshev-t".into(),
        }
    }

    /// Monic ultraspherical (Gegenbauer) polynomials P_n^{(ν)}, ν > −1/2.
    pub fn ultraspherical(nu: f64) -> Result<Self> {
        let params = super::UltrasphericalParams::new(nu)?;
        Ok(Self {
            alpha: Arc::new(|_| 0.0),
            beta: Arc::new(move |n| params.beta_unchecked(n)),
            symmetric: true,
            degenerate: false,
            ultraspherical_nu: Some(nu),
            label: format!("ultraspherical(nu={nu})"),
        })
    }

    pub fn alpha(&self, n: usize) -> f64 {
        (self.alpha)(n)
    }

    /// β_n for n ≥ 1. β_0 is not part of the recurrence and returns 0.
    pub fn beta(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            (self.beta)(n)
        }
    }

    /// β_n with the co-dilation applied (λ·β_m at n = m).
    pub fn dilated_beta(&self, dilation: Option<CoDilation>, n: usize) -> f64 {
        let b = self.beta(n);
        match dilation {
            Some(d) if d.m == n => d.lambda * b,
            _ => b,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The ν parameter when this is an (undilated, unshifted) ultraspherical family.
    pub fn ultraspherical_nu(&self) -> Option<f64> {
        self.ultraspherical_nu
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The m-th numerator scheme: β'_n = β_{n+m}. Generates P_n^{(m)}.
    pub fn numerator(&self, m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("m", m, "numerator index must be at least 1"));
        }
        if !self.symmetric {
            return Err(Error::invalid(
                "scheme",
                &self.label,
                "numerator polynomials are only defined here for symmetric schemes",
            ));
        }
        let beta = Arc::clone(&self.beta);
        Ok(Self {
            alpha: Arc::new(|_| 0.0),
            beta: Arc::new(move |n| beta(n + m)),
            symmetric: true,
            degenerate: self.degenerate,
            // β_n = 1/4 is shift invariant
            ultraspherical_nu: self.ultraspherical_nu.filter(|&nu| nu == 1.0),
            label: format!("{}^({m})", self.label),
        })
    }
}

impl fmt::Debug for RecurrenceScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecurrenceScheme")
            .field("label", &self.label)
            .field("symmetric", &self.symmetric)
            .field("degenerate", &self.degenerate)
            .finish()
    }
}

/// Multiplies the single recurrence coefficient β_m by λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoDilation {
    pub m: usize,
    pub lambda: f64,
}

impl CoDilation {
    pub fn new(m: usize, lambda: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("m", m, "dilated index must be at least 1"));
        }
        if !lambda.is_finite() {
            return Err(Error::invalid("lambda", lambda, "must be finite"));
        }
        Ok(Self { m, lambda })
    }

    /// Dilation of the first coefficient β_1, the case used by the ν-methods.
    pub fn first(lambda: f64) -> Result<Self> {
        Self::new(1, lambda)
    }

    pub fn is_identity(&self) -> bool {
        self.lambda == 1.0
    }
}
