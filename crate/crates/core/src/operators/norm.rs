use super::operator::{dot, norm2, LinearOperator};

pub const DEFAULT_NORM_TOL: f64 = 1e-10;
pub const DEFAULT_NORM_MAX_ITERS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    /// Estimate of ‖A*A‖ (largest eigenvalue of A*A).
    pub value: f64,
    pub iterations: usize,
    /// False when `max_iters` was hit first; `value` is then the last estimate.
    pub converged: bool,
}

/// Power iteration on A*A from the normalized all-ones vector. Stops when
/// successive Rayleigh quotients differ by less than `tol`.
pub fn operator_norm_sq<O: LinearOperator + ?Sized>(op: &O, tol: f64, max_iters: usize) -> NormEstimate {
    let dim = op.domain_dim();
    let mut v = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut av = vec![0.0; op.range_dim()];
    let mut w = vec![0.0; dim];
    let mut previous = f64::NAN;
    for it in 1..=max_iters {
        op.apply(&v, &mut av);
        op.apply_adjoint(&av, &mut w);
        let rayleigh = dot(&v, &w);
        let wn = norm2(&w);
        if wn == 0.0 {
            return NormEstimate {
                value: 0.0,
                iterations: it,
                converged: true,
            };
        }
        if (rayleigh - previous).abs() < tol {
            return NormEstimate {
                value: rayleigh,
                iterations: it,
                converged: true,
            };
        }
        previous = rayleigh;
        v.iter_mut().zip(&w).for_each(|(vi, wi)| *vi = wi / wn);
    }
    NormEstimate {
        value: previous,
        iterations: max_iters,
        converged: false,
    }
}
