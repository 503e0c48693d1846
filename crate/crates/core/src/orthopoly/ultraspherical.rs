//! Closed forms for the ultraspherical family P_n^{(ν)} and its m = 1 co-dilation.
//!
//! Every Γ-quotient that appears is expressed through
//!
//! ```text
//! R(n) = Γ(2ν+1) Γ(n+1) / Γ(n+2ν),   R(0) = 2ν,   R(n+1) = R(n) (n+1) / (n+2ν),
//! ```
//!
//! so no Γ value is ever formed (Γ(2n+2ν) overflows near n ≈ 85).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltrasphericalParams {
    nu: f64,
}

/// L₁ and the critical dilation 1 / (1 − L₁).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConstants {
    pub l1: f64,
    pub lambda_critical: f64,
}

impl UltrasphericalParams {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > -0.5) || !nu.is_finite() {
            return Err(Error::invalid("nu", nu, "must satisfy nu > -1/2"));
        }
        Ok(Self { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    fn require_above_half(&self) -> Result<()> {
        if self.nu > 0.5 {
            Ok(())
        } else {
            Err(Error::invalid("nu", self.nu, "closed form requires nu > 1/2"))
        }
    }

    fn require_subcritical(&self, lambda: f64) -> Result<()> {
        self.require_above_half()?;
        if lambda < 2.0 * self.nu && lambda.is_finite() {
            Ok(())
        } else {
            Err(Error::invalid("lambda", lambda, "closed form requires lambda < 2 nu"))
        }
    }

    /// β_n = n (n+2ν−1) / (4 (n+ν)(n+ν−1)), n ≥ 1.
    pub fn beta(&self, n: usize) -> Result<f64> {
        if n < 1 {
            return Err(Error::invalid("n", n, "beta is defined for n >= 1"));
        }
        Ok(self.beta_unchecked(n))
    }

    pub(crate) fn beta_unchecked(&self, n: usize) -> f64 {
        let nu = self.nu;
        if n == 1 {
            // cancels the (n+ν−1) = ν factor, which vanishes at ν = 0
            return 1.0 / (2.0 * (1.0 + nu));
        }
        let n = n as f64;
        n * (n + 2.0 * nu - 1.0) / (4.0 * (n + nu) * (n + nu - 1.0))
    }

    pub fn critical_constants(&self) -> CriticalConstants {
        let l1 = if self.nu > 0.5 {
            (2.0 * self.nu - 1.0) / (2.0 * self.nu)
        } else {
            0.0
        };
        CriticalConstants {
            l1,
            lambda_critical: 1.0 / (1.0 - l1),
        }
    }

    /// R(n) by its multiplicative recursion.
    pub fn gamma_ratio(&self, n: usize) -> f64 {
        let two_nu = 2.0 * self.nu;
        (0..n).fold(two_nu, |r, k| r * (k as f64 + 1.0) / (k as f64 + two_nu))
    }

    /// Q_{n−1}^{(ν)}(1) / P_n^{(ν)}(1) = 2ν/(2ν−1) · (1 − Γ(2ν)Γ(n+1)/Γ(n+2ν)).
    pub fn numerator_quotient_at_one(&self, n: usize) -> Result<f64> {
        self.require_above_half()?;
        if n < 1 {
            return Err(Error::invalid("n", n, "quotient is defined for n >= 1"));
        }
        let two_nu = 2.0 * self.nu;
        Ok(two_nu / (two_nu - 1.0) * (1.0 - self.gamma_ratio(n) / two_nu))
    }

    /// lim P_n^*(1) / P_n(1) = λ + (1 − λ)/L₁.
    pub fn limit_ratio(&self, lambda: f64) -> Result<f64> {
        self.require_above_half()?;
        let c = self.critical_constants();
        if lambda > c.lambda_critical {
            return Err(Error::invalid("lambda", lambda, "limit is stated for lambda <= 2 nu"));
        }
        if lambda == c.lambda_critical {
            return Ok(0.0);
        }
        Ok(lambda + (1.0 - lambda) / c.l1)
    }

    /// Uniform bound of |P_n^*(x) / P_n^*(1)| on [−1, 1].
    pub fn sup_bound_codilated(&self, lambda: f64) -> Result<f64> {
        self.require_subcritical(lambda)?;
        if (0.0..=1.0).contains(&lambda) {
            return Ok(1.0);
        }
        let two_nu = 2.0 * self.nu;
        Ok((two_nu * (2.0 * lambda - 1.0) - lambda).abs() / (two_nu - lambda))
    }

    /// μ_{n+1} = P_n^*(1) / P_{n+1}^*(1) for the β_1-dilated family, n ≥ 1.
    pub fn mu_closed(&self, lambda: f64, n: usize) -> Result<f64> {
        self.require_subcritical(lambda)?;
        if n < 1 {
            return Err(Error::invalid("n", n, "closed form holds for n >= 1"));
        }
        Ok(mu_from_ratio(self.nu, lambda, n, self.gamma_ratio(n)))
    }

    /// ᵃμ_{n+1} = P_{2n}^*(1) / P_{2n+2}^*(1). For n = 0 this is the start
    /// factor (2ν+2)/(2ν+2−λ).
    pub fn amu_closed(&self, lambda: f64, n: usize) -> Result<f64> {
        self.require_subcritical(lambda)?;
        Ok(amu_from_ratio(self.nu, lambda, n, self.gamma_ratio(2 * n)))
    }

    /// Streaming μ_2, μ_3, … in O(1) per term.
    pub fn mu_sequence(&self, lambda: f64) -> Result<MuSequence> {
        self.require_subcritical(lambda)?;
        Ok(MuSequence::new(self.nu, lambda, false))
    }

    /// As [`mu_sequence`](Self::mu_sequence) without the λ < 2ν check.
    pub fn mu_sequence_unchecked(&self, lambda: f64) -> MuSequence {
        MuSequence::new(self.nu, lambda, false)
    }

    /// Streaming ᵃμ_1, ᵃμ_2, … in O(1) per term.
    pub fn amu_sequence(&self, lambda: f64) -> Result<MuSequence> {
        self.require_subcritical(lambda)?;
        Ok(MuSequence::new(self.nu, lambda, true))
    }

    /// As [`amu_sequence`](Self::amu_sequence) without the λ < 2ν check, for
    /// runs that deliberately probe the supercritical regime.
    pub fn amu_sequence_unchecked(&self, lambda: f64) -> MuSequence {
        MuSequence::new(self.nu, lambda, true)
    }

    /// Damping factor 1 − β_{2n} − β_{2n+1} of the ν-method recursion, n ≥ 1.
    pub fn nu_method_damping(&self, n: usize) -> f64 {
        let nu = self.nu;
        let n = n as f64;
        1.0 - (4.0 * n * n + 4.0 * nu * n + nu - 1.0)
            / (2.0 * (2.0 * n + nu + 1.0) * (2.0 * n + nu - 1.0))
    }
}

fn mu_from_ratio(nu: f64, lambda: f64, n: usize, r: f64) -> f64 {
    let n = n as f64;
    let two_nu = 2.0 * nu;
    let num = (two_nu - lambda) + (lambda - 1.0) * r;
    let den = (two_nu - lambda) * (n + two_nu) + (lambda - 1.0) * (n + 1.0) * r;
    2.0 * (n + nu) * num / den
}

fn amu_from_ratio(nu: f64, lambda: f64, n: usize, r: f64) -> f64 {
    let two_nu = 2.0 * nu;
    if n == 0 {
        return (two_nu + 2.0) / (two_nu + 2.0 - lambda);
    }
    let m = 2.0 * n as f64;
    let num = (two_nu - lambda) + (lambda - 1.0) * r;
    let den = (two_nu - lambda) * (m + two_nu) * (m + two_nu + 1.0)
        + (lambda - 1.0) * (m + 1.0) * (m + 2.0) * r;
    4.0 * (m + nu) * (m + nu + 1.0) * num / den
}

/// Iterator over closed-form normalization factors with R(n) updated in place.
#[derive(Debug, Clone)]
pub struct MuSequence {
    nu: f64,
    lambda: f64,
    asymmetric: bool,
    n: usize,
    r: f64,
    r_index: usize,
}

impl MuSequence {
    fn new(nu: f64, lambda: f64, asymmetric: bool) -> Self {
        Self {
            nu,
            lambda,
            asymmetric,
            n: if asymmetric { 0 } else { 1 },
            r: 2.0 * nu,
            r_index: 0,
        }
    }

    fn advance_ratio(&mut self, target: usize) {
        let two_nu = 2.0 * self.nu;
        while self.r_index < target {
            let k = self.r_index as f64;
            self.r *= (k + 1.0) / (k + two_nu);
            self.r_index += 1;
        }
    }

    /// Index n of the next value μ_{n+1} (or ᵃμ_{n+1}).
    pub fn next_index(&self) -> usize {
        self.n
    }
}

impl Iterator for MuSequence {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let n = self.n;
        self.n += 1;
        if self.asymmetric {
            self.advance_ratio(2 * n);
            Some(amu_from_ratio(self.nu, self.lambda, n, self.r))
        } else {
            self.advance_ratio(n);
            Some(mu_from_ratio(self.nu, self.lambda, n, self.r))
        }
    }
}
