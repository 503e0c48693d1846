use super::eval::ResidualKind;
use super::scheme::{CoDilation, RecurrenceScheme};
use crate::error::{Error, Result};

/// How strictly the recursion treats its denominators P_{n+1}(1)/P_n(1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenominatorPolicy {
    /// Fail as soon as a denominator is ≤ 0, i.e. P_n(1) changes sign.
    /// Below the critical dilation this never happens.
    Positive,
    /// Fail only when a denominator is numerically zero. Used to probe
    /// supercritical dilations, where P_n(1) may become negative.
    NonZero,
}

/// One step of the normalization recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationStep {
    /// n such that `mu` is μ_{n+1} (or ᵃμ_{n+1}).
    pub index: usize,
    pub mu: f64,
    /// 1 − α_n (symmetric residuals) or 1 − β_{2n} − β_{2n+1} (asymmetric
    /// residuals); zero for the start step n = 0.
    pub momentum_base: f64,
}

/// Streaming μ_{n+1} = P_n(1)/P_{n+1}(1), or ᵃμ_{n+1} = P_{2n}(1)/P_{2n+2}(1).
#[derive(Debug, Clone)]
pub struct NormalizationRecursion {
    scheme: RecurrenceScheme,
    dilation: Option<CoDilation>,
    kind: ResidualKind,
    policy: DenominatorPolicy,
    next_index: usize,
    prev_mu: f64,
}

impl NormalizationRecursion {
    pub fn new(
        scheme: &RecurrenceScheme,
        dilation: Option<CoDilation>,
        kind: ResidualKind,
        policy: DenominatorPolicy,
    ) -> Result<Self> {
        if kind == ResidualKind::Asymmetric && !scheme.is_symmetric() {
            return Err(Error::invalid(
                "scheme",
                scheme.label(),
                "asymmetric residuals need a symmetric family",
            ));
        }
        Ok(Self {
            scheme: scheme.clone(),
            dilation,
            kind,
            policy,
            next_index: 0,
            prev_mu: 0.0,
        })
    }

    fn beta(&self, n: usize) -> f64 {
        self.scheme.dilated_beta(self.dilation, n)
    }

    fn check(&self, index: usize, denominator: f64) -> Result<()> {
        let bad = match self.policy {
            DenominatorPolicy::Positive => !(denominator > 0.0),
            DenominatorPolicy::NonZero => !(denominator.abs() >= 1e-300) || !denominator.is_finite(),
        };
        if bad {
            Err(Error::DivergentNormalization { index, denominator })
        } else {
            Ok(())
        }
    }

    pub fn step(&mut self) -> Result<NormalizationStep> {
        let n = self.next_index;
        let (base, denominator) = match (self.kind, n) {
            (ResidualKind::Symmetric, 0) => (0.0, 1.0 - self.scheme.alpha(0)),
            (ResidualKind::Asymmetric, 0) => (0.0, 1.0 - self.beta(1)),
            (ResidualKind::Symmetric, _) => {
                let base = 1.0 - self.scheme.alpha(n);
                (base, base - self.beta(n) * self.prev_mu)
            }
            (ResidualKind::Asymmetric, _) => {
                let (b0, b1, bm) = (self.beta(2 * n), self.beta(2 * n + 1), self.beta(2 * n - 1));
                let base = 1.0 - b0 - b1;
                (base, base - b0 * bm * self.prev_mu)
            }
        };
        self.check(n + 1, denominator)?;
        let mu = 1.0 / denominator;
        self.prev_mu = mu;
        self.next_index += 1;
        Ok(NormalizationStep {
            index: n,
            mu,
            momentum_base: base,
        })
    }
}

/// μ_1, …, μ_{n_max} (or ᵃμ_1, …) by the recursion on the (co-dilated) coefficients.
pub fn mu_recursive(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    kind: ResidualKind,
    n_max: usize,
) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", n_max, "must be at least 1"));
    }
    let mut rec = NormalizationRecursion::new(scheme, dilation, kind, DenominatorPolicy::Positive)?;
    (0..n_max).map(|_| rec.step().map(|s| s.mu)).collect()
}
