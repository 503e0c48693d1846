//! Conjugate gradients on A*A f = A*g in factored (CGLS) form.

use super::config::{SolverConfig, StopReason};
use super::methods::{residual_below, StagnationMonitor};
use super::report::SolveReport;
use crate::error::{Error, Result};
use crate::operators::{dot, norm2, LinearOperator};

pub fn cg_normal_equations<O: LinearOperator + ?Sized>(
    op: &O,
    g: &[f64],
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    if g.len() != op.range_dim() {
        return Err(Error::DimensionMismatch {
            expected: op.range_dim(),
            found: g.len(),
        });
    }
    let dim = op.domain_dim();
    let mut f = vec![0.0; dim];
    let mut r = g.to_vec();
    let mut s = op.adjoint(&r);
    let mut p = s.clone();
    let mut q = vec![0.0; op.range_dim()];
    let mut gamma = dot(&s, &s);
    let mut history = vec![norm2(&r)];
    let mut monitor = StagnationMonitor::default();
    monitor.observe(history[0]);
    let mut n = 0;

    let stop_reason = loop {
        if residual_below(history[n], config.tau, config.epsilon) {
            break StopReason::Discrepancy;
        }
        if n >= config.max_iter {
            break StopReason::MaxIter;
        }
        op.apply(&p, &mut q);
        let delta = dot(&q, &q);
        if !(delta > f64::MIN_POSITIVE) || gamma == 0.0 {
            break StopReason::Breakdown;
        }
        let alpha = gamma / delta;
        f.iter_mut().zip(&p).for_each(|(fi, pi)| *fi += alpha * pi);
        op.apply(&f, &mut r);
        r.iter_mut().zip(g).for_each(|(ri, gi)| *ri = gi - *ri);
        n += 1;
        let norm = norm2(&r);
        history.push(norm);
        if !norm.is_finite() {
            break StopReason::Breakdown;
        }
        op.apply_adjoint(&r, &mut s);
        let gamma_next = dot(&s, &s);
        let beta = gamma_next / gamma;
        gamma = gamma_next;
        p.iter_mut().zip(&s).for_each(|(pi, si)| *pi = si + beta * *pi);
        if !residual_below(norm, config.tau, config.epsilon) && monitor.observe(norm) {
            break StopReason::Stagnation;
        }
    };

    Ok(SolveReport {
        method: config.method,
        iterations: n,
        stop_reason,
        residual_history: history,
        f_final: f,
        chosen_lambda: None,
        gamma_final: None,
        warnings: Vec::new(),
    })
}
