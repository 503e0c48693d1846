use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Landweber,
    /// Symmetric residuals of the ultraspherical family, β_1 dilated, coefficients by recursion.
    GeneralSI,
    /// Symmetric residuals with closed-form coefficients.
    CoDilatedUltraspherical,
    /// Asymmetric residuals of the ultraspherical family, coefficients by recursion.
    AsymmetricSI,
    /// Co-dilated ν-method with closed-form coefficients.
    CoDilatedNu,
    AdaptiveCoDilatedOne,
    CG,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Landweber,
        Method::GeneralSI,
        Method::CoDilatedUltraspherical,
        Method::AsymmetricSI,
        Method::CoDilatedNu,
        Method::AdaptiveCoDilatedOne,
        Method::CG,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Landweber => "landweber",
            Method::GeneralSI => "general",
            Method::CoDilatedUltraspherical => "ultraspherical",
            Method::AsymmetricSI => "asymmetric",
            Method::CoDilatedNu => "nu",
            Method::AdaptiveCoDilatedOne => "adaptive",
            Method::CG => "cg",
        }
    }

    pub fn default_max_iter(self) -> usize {
        match self {
            Method::Landweber => 1_000_000,
            Method::CG => 1_000,
            _ => 10_000,
        }
    }

    /// Whether the residual polynomials are asymmetric (vanish at y = 1).
    pub fn is_asymmetric(self) -> bool {
        matches!(
            self,
            Method::AsymmetricSI | Method::CoDilatedNu | Method::AdaptiveCoDilatedOne
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::invalid(
                    "method",
                    s,
                    "expected landweber, general, ultraspherical, asymmetric, nu, adaptive or cg",
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    pub nu: f64,
    pub lambda: f64,
    pub omega: f64,
    pub tau: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    /// Lets the closed-form methods run with λ ≥ 2ν. Used by sweeps that
    /// probe past the critical dilation.
    pub allow_supercritical: bool,
}

impl SolverConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            nu: 1.0,
            lambda: 1.0,
            omega: 1.0,
            tau: 4.0,
            epsilon: 0.01,
            max_iter: method.default_max_iter(),
            allow_supercritical: false,
        }
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn supercritical(mut self, allow: bool) -> Self {
        self.allow_supercritical = allow;
        self
    }

    /// Checks the parameter ranges shared by all methods.
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::invalid("omega", self.omega, "must be finite and > 0"));
        }
        if !(self.tau > 1.0) || !self.tau.is_finite() {
            return Err(Error::invalid("tau", self.tau, "must be finite and > 1"));
        }
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::invalid("epsilon", self.epsilon, "must be finite and >= 0"));
        }
        if !self.lambda.is_finite() {
            return Err(Error::invalid("lambda", self.lambda, "must be finite"));
        }
        if !(self.nu > -0.5) || !self.nu.is_finite() {
            return Err(Error::invalid("nu", self.nu, "must be finite and > -1/2"));
        }
        Ok(())
    }

    /// Closed-form methods need ν > 1/2 and λ < 2ν unless supercritical runs are allowed.
    pub(crate) fn validate_closed_form(&self) -> Result<()> {
        if !(self.nu > 0.5) {
            return Err(Error::invalid("nu", self.nu, "closed-form methods need nu > 1/2"));
        }
        if !self.allow_supercritical && !(self.lambda < 2.0 * self.nu) {
            return Err(Error::invalid(
                "lambda",
                self.lambda,
                "must be below the critical dilation 2*nu",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    Discrepancy,
    MaxIter,
    Stagnation,
    /// Non-finite iterate, or a CG direction with non-positive curvature.
    Breakdown,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            StopReason::Discrepancy => "discrepancy",
            StopReason::MaxIter => "max_iter",
            StopReason::Stagnation => "stagnation",
            StopReason::Breakdown => "breakdown",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
