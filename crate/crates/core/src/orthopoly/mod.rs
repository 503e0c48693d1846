//! Monic orthogonal polynomial families, their co-dilated and numerator
//! variants, residual polynomials and everything the semi-iterative solvers
//! need from them.
//!
//! A family is given by its three-term recurrence
//! `P_{n+1}(x) = (x − α_n) P_n(x) − β_n P_{n−1}(x)`. A [`CoDilation`]
//! multiplies the single coefficient β_m by a factor λ; for symmetric families
//! this is equivalent to `P_n^* = λ P_n + (1 − λ) P_m P_{n−m}^{(m)}` with the
//! m-th numerator polynomials `P^{(m)}`.
//!
//! All routines are pure functions of immutable inputs.

mod chebyshev;
mod eval;
mod modulus;
mod normalization;
mod scheme;
mod ultraspherical;
mod zeros;

pub use chebyshev::{chebyshev_closed, ChebyshevKind};
pub use eval::{
    eval_codilated_via_representation, eval_monic, eval_ratio, eval_scaled, residual_eval,
    ResidualKind, ScaledValue,
};
pub use modulus::modulus_of_convergence;
pub use normalization::{
    mu_recursive, DenominatorPolicy, NormalizationRecursion, NormalizationStep,
};
pub use scheme::{CoDilation, CoefficientFn, RecurrenceScheme};
pub use ultraspherical::{CriticalConstants, MuSequence, UltrasphericalParams};
pub use zeros::{find_zeros, polynomial_zeros, ZeroReport, GRID_POINTS_PER_DEGREE, ZERO_TOLERANCE};

use crate::error::Result;

/// The m-th numerator scheme of a symmetric family.
pub fn numerator_scheme(scheme: &RecurrenceScheme, m: usize) -> Result<RecurrenceScheme> {
    scheme.numerator(m)
}

/// Recurrence coefficient β_n of the ultraspherical family.
pub fn ultraspherical_beta(params: UltrasphericalParams, n: usize) -> Result<f64> {
    params.beta(n)
}
