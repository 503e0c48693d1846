use log::warn;

use super::config::{Method, SolverConfig, StopReason};
use super::iteration::{CoefficientStream, IterationState, SemiIteration};
use super::report::SolveReport;
use crate::error::{Error, Result};
use crate::operators::{operator_norm_sq, LinearOperator};
use crate::orthopoly::{CoDilation, DenominatorPolicy, RecurrenceScheme, ResidualKind};

pub const STAGNATION_WINDOW: usize = 50;
pub const STAGNATION_REL_CHANGE: f64 = 1e-15;

/// True iff the residual is below τε (or exactly zero, so that ε = 0 can still stop).
pub fn discrepancy_stop(state: &IterationState, tau: f64, epsilon: f64) -> bool {
    residual_below(state.residual_norm, tau, epsilon)
}

pub(crate) fn residual_below(norm: f64, tau: f64, epsilon: f64) -> bool {
    norm < tau * epsilon || norm == 0.0
}

/// Counts consecutive steps whose relative residual change is below
/// [`STAGNATION_REL_CHANGE`].
#[derive(Debug, Clone, Default)]
pub(crate) struct StagnationMonitor {
    last: Option<f64>,
    flat_steps: usize,
}

impl StagnationMonitor {
    pub fn observe(&mut self, norm: f64) -> bool {
        if let Some(last) = self.last {
            if (norm - last).abs() <= STAGNATION_REL_CHANGE * last.abs() {
                self.flat_steps += 1;
            } else {
                self.flat_steps = 0;
            }
        }
        self.last = Some(norm);
        self.flat_steps >= STAGNATION_WINDOW
    }
}

/// Estimates ‖A*A‖ once and warns when ω‖A*A‖ leaves the convergence range.
pub(crate) fn omega_warnings<O: LinearOperator + ?Sized>(op: &O, config: &SolverConfig) -> Vec<String> {
    if config.method == Method::CG {
        return Vec::new();
    }
    let est = operator_norm_sq(op, 1e-12, 2_000);
    let product = config.omega * est.value;
    let exceeded = if config.method.is_asymmetric() {
        product > 1.0 + 1e-9
    } else {
        product >= 1.0 - 1e-9
    };
    if exceeded {
        let msg = format!(
            "omega*||A*A|| = {product:.6} is outside the convergence range of the {} method",
            config.method
        );
        warn!("{msg}");
        vec![msg]
    } else {
        Vec::new()
    }
}

fn run_stream<O: LinearOperator + ?Sized>(
    op: &O,
    g: &[f64],
    config: &SolverConfig,
    stream: CoefficientStream,
) -> Result<SolveReport> {
    config.validate()?;
    let warnings = omega_warnings(op, config);
    let mut it = SemiIteration::new(op, g, config.omega, stream)?;
    let mut history = vec![it.state().residual_norm];
    let mut monitor = StagnationMonitor::default();
    monitor.observe(it.state().residual_norm);
    let stop_reason = loop {
        let state = it.state();
        if discrepancy_stop(state, config.tau, config.epsilon) {
            break StopReason::Discrepancy;
        }
        if state.n >= config.max_iter {
            break StopReason::MaxIter;
        }
        let state = it.step()?;
        history.push(state.residual_norm);
        if !state.residual_norm.is_finite() {
            break StopReason::Breakdown;
        }
        if !discrepancy_stop(state, config.tau, config.epsilon) && monitor.observe(state.residual_norm) {
            break StopReason::Stagnation;
        }
    };
    let state = it.into_state();
    Ok(SolveReport {
        method: config.method,
        iterations: state.n,
        stop_reason,
        residual_history: history,
        f_final: state.f_curr,
        chosen_lambda: None,
        gamma_final: None,
        warnings,
    })
}

fn policy(config: &SolverConfig) -> DenominatorPolicy {
    if config.allow_supercritical {
        DenominatorPolicy::NonZero
    } else {
        DenominatorPolicy::Positive
    }
}

pub fn landweber<O: LinearOperator + ?Sized>(op: &O, g: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    run_stream(op, g, config, CoefficientStream::Landweber)
}

/// Symmetric residual polynomials of an arbitrary monic family.
pub fn general_semi_iterative<O: LinearOperator + ?Sized>(
    op: &O,
    g: &[f64],
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    config: &SolverConfig,
) -> Result<SolveReport> {
    let stream = CoefficientStream::recursion(scheme, dilation, ResidualKind::Symmetric, policy(config))?;
    run_stream(op, g, config, stream)
}

pub fn codilated_ultraspherical<O: LinearOperator + ?Sized>(
    op: &O,
    g: &[f64],
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate_closed_form()?;
    let stream = CoefficientStream::ultraspherical(config.nu, config.lambda, config.allow_supercritical)?;
    run_stream(op, g, config, stream)
}

/// Asymmetric residual polynomials of a symmetric monic family.
pub fn asymmetric_semi_iterative<O: LinearOperator + ?Sized>(
    op: &O,
    g: &[f64],
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    config: &SolverConfig,
) -> Result<SolveReport> {
    if !scheme.is_symmetric() {
        return Err(Error::invalid(
            "scheme",
            scheme.label(),
            "asymmetric residuals need a symmetric family",
        ));
    }
    let stream = CoefficientStream::recursion(scheme, dilation, ResidualKind::Asymmetric, policy(config))?;
    run_stream(op, g, config, stream)
}

pub fn codilated_nu<O: LinearOperator + ?Sized>(op: &O, g: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    config.validate_closed_form()?;
    let stream = CoefficientStream::nu_method(config.nu, config.lambda, config.allow_supercritical)?;
    run_stream(op, g, config, stream)
}

/// Dispatches on `config.method`. The recursion-based methods use the
/// ultraspherical family of parameter ν with β_1 dilated by λ.
pub fn solve<O: LinearOperator + ?Sized>(op: &O, g: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    match config.method {
        Method::Landweber => landweber(op, g, config),
        Method::GeneralSI | Method::AsymmetricSI => {
            let scheme = RecurrenceScheme::ultraspherical(config.nu)?;
            let dilation = CoDilation::first(config.lambda)?;
            if config.method == Method::GeneralSI {
                general_semi_iterative(op, g, &scheme, Some(dilation), config)
            } else {
                asymmetric_semi_iterative(op, g, &scheme, Some(dilation), config)
            }
        }
        Method::CoDilatedUltraspherical => codilated_ultraspherical(op, g, config),
        Method::CoDilatedNu => codilated_nu(op, g, config),
        Method::AdaptiveCoDilatedOne => super::adaptive::adaptive_codilated_one(op, g, config),
        Method::CG => super::cg::cg_normal_equations(op, g, config),
    }
}
