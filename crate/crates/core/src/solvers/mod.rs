//! Iterative regularization methods with discrepancy-principle stopping.
//!
//! Every a-priori-coefficient method is the two-term recurrence
//! `f_{n+1} = f_n + θ_n (f_n − f_{n−1}) + κ_n ω A*(g − A f_n)` with
//! coefficients taken from the normalization factors of a residual
//! polynomial family. Residual norms are always recomputed from g − A f_n.

mod adaptive;
mod cg;
mod config;
mod iteration;
mod methods;
mod oracle;
mod report;

pub use adaptive::{
    adaptive_codilated_one, affine_minimum, gamma_from_lambda, lambda_from_gamma,
    AdaptiveIteration, AffineMinimum, GAMMA_DEGENERATE,
};
pub use cg::cg_normal_equations;
pub use config::{Method, SolverConfig, StopReason};
pub use iteration::{CoefficientStream, IterationState, SemiIteration, StepCoefficients};
pub use methods::{
    asymmetric_semi_iterative, codilated_nu, codilated_ultraspherical, discrepancy_stop,
    general_semi_iterative, landweber, solve, STAGNATION_REL_CHANGE, STAGNATION_WINDOW,
};
pub use oracle::{oracle_check, plan_for, OraclePlan};
pub use report::SolveReport;
