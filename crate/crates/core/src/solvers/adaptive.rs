//! Adaptive co-dilated 1-method: runs the λ = 1 iteration and, at every step,
//! picks the dilation whose residual is smallest. For ν = 1 the co-dilated
//! residual is the affine combination (1 − γ) v_n + γ v_{n−1}, so the best λ
//! follows from a one-dimensional least-squares fit.

use super::config::{SolverConfig, StopReason};
use super::iteration::{CoefficientStream, SemiIteration};
use super::methods::{omega_warnings, residual_below};
use super::report::SolveReport;
use crate::error::Result;
use crate::operators::{dot, norm2, LinearOperator};

/// Below this ‖v_n − v_{n−1}‖ the fit is undefined and γ is taken as 0.
pub const GAMMA_DEGENERATE: f64 = 1e-300;

/// Affine minimizer over the last two residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMinimum {
    pub gamma: f64,
    pub v_min: Vec<f64>,
    /// v_n − v_{n−1}
    pub difference: Vec<f64>,
    pub degenerate: bool,
}

/// γ = ⟨v_n, v_n − v_{n−1}⟩ / ‖v_n − v_{n−1}‖², v_min = v_n − γ (v_n − v_{n−1}).
pub fn affine_minimum(v_curr: &[f64], v_prev: &[f64]) -> AffineMinimum {
    let difference: Vec<f64> = v_curr.iter().zip(v_prev).map(|(a, b)| a - b).collect();
    let dd = dot(&difference, &difference);
    let degenerate = !(dd.sqrt() >= GAMMA_DEGENERATE);
    let gamma = if degenerate { 0.0 } else { dot(v_curr, &difference) / dd };
    let v_min = v_curr.iter().zip(&difference).map(|(v, d)| v - gamma * d).collect();
    AffineMinimum {
        gamma,
        v_min,
        difference,
        degenerate,
    }
}

/// Dilation realizing the affine minimum after n ≥ 1 steps.
pub fn lambda_from_gamma(gamma: f64, n: usize) -> f64 {
    let n = n as f64;
    1.0 - (2.0 * n + 1.0) * gamma / ((2.0 * n - 1.0) * (1.0 - gamma))
}

/// Weight of v_{n−1} in the co-dilated residual for a given λ; inverse of
/// [`lambda_from_gamma`].
pub fn gamma_from_lambda(lambda: f64, n: usize) -> f64 {
    let n = n as f64;
    (1.0 - lambda) * (2.0 * n - 1.0) / ((2.0 - lambda) * 2.0 * n + lambda)
}

/// Stepwise form exposing the per-step minimizer.
pub struct AdaptiveIteration<'a, O: LinearOperator + ?Sized> {
    inner: SemiIteration<'a, O>,
    last: Option<AffineMinimum>,
}

impl<'a, O: LinearOperator + ?Sized> AdaptiveIteration<'a, O> {
    pub fn new(op: &'a O, g: &'a [f64], omega: f64) -> Result<Self> {
        Ok(Self {
            inner: SemiIteration::new(op, g, omega, CoefficientStream::NemirovskiiPolyak { n: 0 })?,
            last: None,
        })
    }

    pub fn iteration(&self) -> &SemiIteration<'a, O> {
        &self.inner
    }

    pub fn step(&mut self) -> Result<&AffineMinimum> {
        self.inner.step()?;
        let m = affine_minimum(&self.inner.state().residual, self.inner.previous_residual());
        Ok(self.last.insert(m))
    }

    pub fn last_minimum(&self) -> Option<&AffineMinimum> {
        self.last.as_ref()
    }
}

pub fn adaptive_codilated_one<O: LinearOperator + ?Sized>(
    op: &O,
    g: &[f64],
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let warnings = omega_warnings(op, config);
    let mut it = AdaptiveIteration::new(op, g, config.omega)?;
    let mut history = vec![norm2(g)];
    let mut gamma = 0.0;
    let stop_reason = if residual_below(history[0], config.tau, config.epsilon) {
        StopReason::Discrepancy
    } else {
        loop {
            if it.iteration().state().n >= config.max_iter {
                break StopReason::MaxIter;
            }
            let m = it.step()?;
            let v_min_norm = norm2(&m.v_min);
            history.push(v_min_norm);
            gamma = m.gamma;
            if !v_min_norm.is_finite() {
                break StopReason::Breakdown;
            }
            if residual_below(v_min_norm, config.tau, config.epsilon) {
                break StopReason::Discrepancy;
            }
            if m.degenerate {
                break StopReason::Stagnation;
            }
        }
    };
    let state = it.inner.into_state();
    let n = state.n;
    let (f_final, chosen_lambda, gamma_final) = if n == 0 {
        (state.f_curr, None, None)
    } else {
        let f = state
            .f_curr
            .iter()
            .zip(&state.f_prev)
            .map(|(f, fp)| f - gamma * (f - fp))
            .collect();
        (f, Some(lambda_from_gamma(gamma, n)), Some(gamma))
    };
    Ok(SolveReport {
        method: config.method,
        iterations: n,
        stop_reason,
        residual_history: history,
        f_final,
        chosen_lambda,
        gamma_final,
        warnings,
    })
}
