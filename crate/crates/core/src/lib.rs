//! Semi-iterative (accelerated Landweber) regularization methods whose
//! residual polynomials come from co-dilated orthogonal polynomials.
//!
//! The crate is split into three layers:
//!
//! - [`orthopoly`]: monic orthogonal polynomial families given by their
//!   three-term recurrence, co-dilation of a single recurrence coefficient,
//!   numerator polynomials, residual polynomials, normalization factors,
//!   zeros and moduli of convergence.
//! - [`operators`]: the linear-operator abstraction together with the
//!   diagonal and `deriv2` test operators, seeded noise and power iteration.
//! - [`solvers`]: Landweber, the generic semi-iterative schemes, the
//!   co-dilated ν-methods, the adaptive co-dilated 1-method and CGLS, all
//!   stopped by the discrepancy principle.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` rejects NaN on purpose

pub mod error;
pub mod operators;
pub mod orthopoly;
pub mod solvers;

pub use error::{Error, Result};
