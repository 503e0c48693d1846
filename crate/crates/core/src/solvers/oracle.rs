//! Residual-polynomial oracle: on a noiseless diagonal problem g = A f the
//! error of a semi-iterative method is f − f_n = r_n(ω A*A) f componentwise.

use super::config::SolverConfig;
use super::iteration::{CoefficientStream, SemiIteration};
use crate::error::{Error, Result};
use crate::operators::{DiagonalOperator, LinearOperator};
use crate::orthopoly::{
    residual_eval, CoDilation, DenominatorPolicy, RecurrenceScheme, ResidualKind,
};

/// An a-priori-coefficient method together with the residual polynomials it realizes.
#[derive(Debug, Clone)]
pub enum OraclePlan {
    Landweber,
    General {
        scheme: RecurrenceScheme,
        dilation: Option<CoDilation>,
    },
    CoDilatedUltraspherical { nu: f64, lambda: f64 },
    Asymmetric {
        scheme: RecurrenceScheme,
        dilation: Option<CoDilation>,
    },
    CoDilatedNu { nu: f64, lambda: f64 },
}

impl OraclePlan {
    fn residual_model(&self) -> Result<(RecurrenceScheme, Option<CoDilation>, ResidualKind)> {
        Ok(match self {
            OraclePlan::Landweber => (RecurrenceScheme::landweber(), None, ResidualKind::Symmetric),
            OraclePlan::General { scheme, dilation } => (scheme.clone(), *dilation, ResidualKind::Symmetric),
            OraclePlan::CoDilatedUltraspherical { nu, lambda } => (
                RecurrenceScheme::ultraspherical(*nu)?,
                Some(CoDilation::first(*lambda)?),
                ResidualKind::Symmetric,
            ),
            OraclePlan::Asymmetric { scheme, dilation } => (scheme.clone(), *dilation, ResidualKind::Asymmetric),
            OraclePlan::CoDilatedNu { nu, lambda } => (
                RecurrenceScheme::ultraspherical(*nu)?,
                Some(CoDilation::first(*lambda)?),
                ResidualKind::Asymmetric,
            ),
        })
    }

    fn stream(&self) -> Result<CoefficientStream> {
        match self {
            OraclePlan::Landweber => Ok(CoefficientStream::Landweber),
            OraclePlan::General { scheme, dilation } => CoefficientStream::recursion(
                scheme,
                *dilation,
                ResidualKind::Symmetric,
                DenominatorPolicy::NonZero,
            ),
            OraclePlan::CoDilatedUltraspherical { nu, lambda } => {
                CoefficientStream::ultraspherical(*nu, *lambda, false)
            }
            OraclePlan::Asymmetric { scheme, dilation } => CoefficientStream::recursion(
                scheme,
                *dilation,
                ResidualKind::Asymmetric,
                DenominatorPolicy::NonZero,
            ),
            OraclePlan::CoDilatedNu { nu, lambda } => CoefficientStream::nu_method(*nu, *lambda, false),
        }
    }
}

/// Runs `plan` for `n_max` steps on g = A f_true and returns the worst
/// deviation |(f_true − f_n)_i − r_n(ω σ_i²) f_true,i| / max(|f_true,i|, |r_n f_true,i|)
/// over all components and all n ≤ n_max.
pub fn oracle_check(
    op: &DiagonalOperator,
    f_true: &[f64],
    plan: &OraclePlan,
    omega: f64,
    n_max: usize,
) -> Result<f64> {
    if f_true.len() != op.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: op.domain_dim(),
            found: f_true.len(),
        });
    }
    let (scheme, dilation, kind) = plan.residual_model()?;
    let g = op.forward(f_true);
    let ys: Vec<f64> = op.entries().iter().map(|s| omega * s * s).collect();
    let mut it = SemiIteration::new(op, &g, omega, plan.stream()?)?;
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        let state = it.step()?;
        for ((&y, &ft), &fn_) in ys.iter().zip(f_true).zip(&state.f_curr) {
            let predicted = residual_eval(&scheme, dilation, kind, n, y)? * ft;
            let scale = ft.abs().max(predicted.abs());
            if scale > 0.0 {
                worst = worst.max(((ft - fn_) - predicted).abs() / scale);
            }
        }
    }
    Ok(worst)
}

/// The plan matching a config's method, where one exists.
pub fn plan_for(config: &SolverConfig) -> Result<OraclePlan> {
    use super::config::Method;
    Ok(match config.method {
        Method::Landweber => OraclePlan::Landweber,
        Method::GeneralSI => OraclePlan::General {
            scheme: RecurrenceScheme::ultraspherical(config.nu)?,
            dilation: Some(CoDilation::first(config.lambda)?),
        },
        Method::CoDilatedUltraspherical => OraclePlan::CoDilatedUltraspherical {
            nu: config.nu,
            lambda: config.lambda,
        },
        Method::AsymmetricSI => OraclePlan::Asymmetric {
            scheme: RecurrenceScheme::ultraspherical(config.nu)?,
            dilation: Some(CoDilation::first(config.lambda)?),
        },
        Method::CoDilatedNu => OraclePlan::CoDilatedNu {
            nu: config.nu,
            lambda: config.lambda,
        },
        m => {
            return Err(Error::invalid(
                "method",
                m,
                "coefficients depend on the data; no residual-polynomial oracle",
            ))
        }
    })
}
