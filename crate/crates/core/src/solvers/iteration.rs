//! The two-term recurrence shared by all a-priori-coefficient methods:
//!
//! ```text
//! f_{n+1} = f_n + θ_n (f_n − f_{n−1}) + κ_n ω A*(g − A f_n),   f_0 = f_{−1} = 0.
//! ```

use crate::error::{Error, Result};
use crate::operators::{norm2, LinearOperator};
use crate::orthopoly::{
    CoDilation, DenominatorPolicy, MuSequence, NormalizationRecursion, RecurrenceScheme,
    ResidualKind, UltrasphericalParams,
};

/// Momentum θ_n, gradient weight κ_n and the normalization factor μ behind them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepCoefficients {
    pub theta: f64,
    pub kappa: f64,
    pub mu: f64,
}

/// Source of step coefficients, one per iteration.
#[derive(Debug, Clone)]
pub enum CoefficientStream {
    Landweber,
    /// μ by recursion on the (co-dilated) recurrence coefficients.
    Recursion {
        recursion: NormalizationRecursion,
        kind: ResidualKind,
    },
    /// Closed-form μ for co-dilated ultraspherical symmetric residuals.
    Ultraspherical { sequence: MuSequence, n: usize },
    /// Closed-form ᵃμ with the ν-method damping.
    Nu {
        sequence: MuSequence,
        params: UltrasphericalParams,
        n: usize,
    },
    /// The λ = 1 iteration underlying the adaptive method, in explicit form.
    NemirovskiiPolyak { n: usize },
}

impl CoefficientStream {
    pub fn recursion(
        scheme: &RecurrenceScheme,
        dilation: Option<CoDilation>,
        kind: ResidualKind,
        policy: DenominatorPolicy,
    ) -> Result<Self> {
        Ok(CoefficientStream::Recursion {
            recursion: NormalizationRecursion::new(scheme, dilation, kind, policy)?,
            kind,
        })
    }

    pub fn ultraspherical(nu: f64, lambda: f64, allow_supercritical: bool) -> Result<Self> {
        let params = UltrasphericalParams::new(nu)?;
        let sequence = if allow_supercritical {
            params.mu_sequence_unchecked(lambda)
        } else {
            params.mu_sequence(lambda)?
        };
        Ok(CoefficientStream::Ultraspherical { sequence, n: 0 })
    }

    pub fn nu_method(nu: f64, lambda: f64, allow_supercritical: bool) -> Result<Self> {
        let params = UltrasphericalParams::new(nu)?;
        let sequence = if allow_supercritical {
            params.amu_sequence_unchecked(lambda)
        } else {
            params.amu_sequence(lambda)?
        };
        Ok(CoefficientStream::Nu {
            sequence,
            params,
            n: 0,
        })
    }

    pub fn next_coefficients(&mut self) -> Result<StepCoefficients> {
        match self {
            CoefficientStream::Landweber => Ok(StepCoefficients {
                theta: 0.0,
                kappa: 2.0,
                mu: 1.0,
            }),
            CoefficientStream::Recursion { recursion, kind } => {
                let step = recursion.step()?;
                let theta = if step.index == 0 {
                    0.0
                } else {
                    step.momentum_base * step.mu - 1.0
                };
                let kappa = match kind {
                    ResidualKind::Symmetric => 2.0 * step.mu,
                    ResidualKind::Asymmetric => step.mu,
                };
                Ok(StepCoefficients {
                    theta,
                    kappa,
                    mu: step.mu,
                })
            }
            CoefficientStream::Ultraspherical { sequence, n } => {
                let k = *n;
                *n += 1;
                // α ≡ 0 and μ_1 = 1
                let mu = if k == 0 { 1.0 } else { next_mu(sequence, k)? };
                Ok(StepCoefficients {
                    theta: if k == 0 { 0.0 } else { mu - 1.0 },
                    kappa: 2.0 * mu,
                    mu,
                })
            }
            CoefficientStream::Nu { sequence, params, n } => {
                let k = *n;
                *n += 1;
                let mu = next_mu(sequence, k)?;
                let theta = if k == 0 {
                    0.0
                } else {
                    params.nu_method_damping(k) * mu - 1.0
                };
                Ok(StepCoefficients {
                    theta,
                    kappa: mu,
                    mu,
                })
            }
            CoefficientStream::NemirovskiiPolyak { n } => {
                let k = *n as f64;
                *n += 1;
                if k == 0.0 {
                    return Ok(StepCoefficients {
                        theta: 0.0,
                        kappa: 4.0 / 3.0,
                        mu: 4.0 / 3.0,
                    });
                }
                let mu = 4.0 * (2.0 * k + 1.0) / (2.0 * k + 3.0);
                Ok(StepCoefficients {
                    theta: (2.0 * k - 1.0) / (2.0 * k + 3.0),
                    kappa: mu,
                    mu,
                })
            }
        }
    }
}

fn next_mu(sequence: &mut MuSequence, index: usize) -> Result<f64> {
    match sequence.next() {
        Some(mu) if mu.is_finite() => Ok(mu),
        other => Err(Error::DivergentNormalization {
            index: index + 1,
            denominator: other.map_or(f64::NAN, |mu| 1.0 / mu),
        }),
    }
}

/// Snapshot of a running iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationState {
    pub n: usize,
    pub f_curr: Vec<f64>,
    pub f_prev: Vec<f64>,
    /// μ used in the step that produced `f_curr`; 0 before the first step.
    pub mu_curr: f64,
    /// v_n = g − A f_n, recomputed from `f_curr` every step.
    pub residual: Vec<f64>,
    pub residual_norm: f64,
}

/// Stepwise driver of the two-term recurrence.
pub struct SemiIteration<'a, O: LinearOperator + ?Sized> {
    op: &'a O,
    g: &'a [f64],
    omega: f64,
    stream: CoefficientStream,
    state: IterationState,
    residual_prev: Vec<f64>,
    gradient: Vec<f64>,
    f_next: Vec<f64>,
}

impl<'a, O: LinearOperator + ?Sized> SemiIteration<'a, O> {
    pub fn new(op: &'a O, g: &'a [f64], omega: f64, stream: CoefficientStream) -> Result<Self> {
        if g.len() != op.range_dim() {
            return Err(Error::DimensionMismatch {
                expected: op.range_dim(),
                found: g.len(),
            });
        }
        let dim = op.domain_dim();
        Ok(Self {
            op,
            g,
            omega,
            stream,
            state: IterationState {
                n: 0,
                f_curr: vec![0.0; dim],
                f_prev: vec![0.0; dim],
                mu_curr: 0.0,
                residual: g.to_vec(),
                residual_norm: norm2(g),
            },
            residual_prev: g.to_vec(),
            gradient: vec![0.0; dim],
            f_next: vec![0.0; dim],
        })
    }

    pub fn state(&self) -> &IterationState {
        &self.state
    }

    /// v_{n−1}; equals v_0 = g before the first step.
    pub fn previous_residual(&self) -> &[f64] {
        &self.residual_prev
    }

    pub fn into_state(self) -> IterationState {
        self.state
    }

    /// Advances to f_{n+1} and recomputes the residual.
    pub fn step(&mut self) -> Result<&IterationState> {
        let c = self.stream.next_coefficients()?;
        let s = &mut self.state;
        self.op.apply_adjoint(&s.residual, &mut self.gradient);
        let weight = c.kappa * self.omega;
        for (((next, &f), &fp), &w) in self
            .f_next
            .iter_mut()
            .zip(&s.f_curr)
            .zip(&s.f_prev)
            .zip(&self.gradient)
        {
            *next = f + c.theta * (f - fp) + weight * w;
        }
        std::mem::swap(&mut s.f_prev, &mut s.f_curr);
        std::mem::swap(&mut s.f_curr, &mut self.f_next);
        std::mem::swap(&mut self.residual_prev, &mut s.residual);
        self.op.apply(&s.f_curr, &mut s.residual);
        for (r, g) in s.residual.iter_mut().zip(self.g) {
            *r = g - *r;
        }
        s.residual_norm = norm2(&s.residual);
        s.mu_curr = c.mu;
        s.n += 1;
        Ok(&self.state)
    }
}
