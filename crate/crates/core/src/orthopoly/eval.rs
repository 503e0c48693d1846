//! Forward evaluation of monic recurrences and the residual polynomials built on them.
//!
//! Plain evaluation ([`eval_monic`]) is unscaled: for |x| ≤ 1 the families used
//! here stay bounded by P_n(1), which itself decays like 2^{-n}, so degrees
//! beyond roughly a thousand underflow. Residual evaluation and sign queries
//! go through a power-of-two rescaled recurrence and have no such limit.

use super::scheme::{CoDilation, RecurrenceScheme};
use crate::error::{Error, Result};

/// Evaluates P_n(x), or the co-dilated P_n^*(x) when `dilation` is given.
pub fn eval_monic(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    n: usize,
    x: f64,
) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = x - scheme.alpha(0);
    for k in 1..n {
        let next = (x - scheme.alpha(k)) * curr - scheme.dilated_beta(dilation, k) * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// P_n(x) represented as `mantissa · 2^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub exponent: i32,
}

impl ScaledValue {
    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// Converts back to a plain float; may under- or overflow.
    pub fn to_f64(&self) -> f64 {
        self.mantissa * 2f64.powi(self.exponent)
    }
}

const RESCALE_HIGH: f64 = 1.8446744073709552e19; // 2^64
const RESCALE_LOW: f64 = 5.421010862427522e-20; // 2^-64

fn power_of_two_exponent(v: f64) -> i32 {
    v.log2().floor() as i32
}

/// Runs the recurrence simultaneously at every point of `xs`, rescaling all
/// tracks by a common power of two. Equal points stay bit-identical.
fn eval_scaled_many<const K: usize>(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    n: usize,
    xs: [f64; K],
) -> ([f64; K], i32) {
    if n == 0 {
        return ([1.0; K], 0);
    }
    let mut prev = [1.0; K];
    let mut curr = xs.map(|x| x - scheme.alpha(0));
    let mut exponent = 0i32;
    for k in 1..n {
        let a = scheme.alpha(k);
        let b = scheme.dilated_beta(dilation, k);
        let mut mag: f64 = 0.0;
        for i in 0..K {
            let next = (xs[i] - a) * curr[i] - b * prev[i];
            prev[i] = curr[i];
            curr[i] = next;
            mag = mag.max(next.abs()).max(prev[i].abs());
        }
        if mag > RESCALE_HIGH || (mag < RESCALE_LOW && mag > 0.0) {
            let e = power_of_two_exponent(mag);
            let factor = 2f64.powi(-e);
            for i in 0..K {
                curr[i] *= factor;
                prev[i] *= factor;
            }
            exponent += e;
        }
    }
    (curr, exponent)
}

/// Overflow-safe evaluation of P_n(x) (or P_n^*(x)).
pub fn eval_scaled(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    n: usize,
    x: f64,
) -> ScaledValue {
    let ([mantissa], exponent) = eval_scaled_many(scheme, dilation, n, [x]);
    ScaledValue { mantissa, exponent }
}

/// P_n(x) / P_n(z) without intermediate under- or overflow.
pub fn eval_ratio(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    n: usize,
    x: f64,
    z: f64,
) -> Result<f64> {
    let ([px, pz], _) = eval_scaled_many(scheme, dilation, n, [x, z]);
    if pz.abs() < 1e-300 {
        return Err(Error::NormalizationVanishes { degree: n });
    }
    Ok(px / pz)
}

/// Which residual polynomial is built from the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidualKind {
    /// r_n(y) = P_n(1 − 2y) / P_n(1)
    Symmetric,
    /// ᵃr_n(y) = P_{2n}(√(1 − y)) / P_{2n}(1), for symmetric families
    Asymmetric,
}

impl ResidualKind {
    /// Degree of the underlying polynomial in x for residual degree `n`.
    pub fn polynomial_degree(self, n: usize) -> usize {
        match self {
            ResidualKind::Symmetric => n,
            ResidualKind::Asymmetric => 2 * n,
        }
    }

    /// Maps y ∈ [0, 1] to the polynomial argument x.
    pub fn argument(self, y: f64) -> f64 {
        match self {
            ResidualKind::Symmetric => 1.0 - 2.0 * y,
            ResidualKind::Asymmetric => (1.0 - y).max(0.0).sqrt(),
        }
    }
}

/// Evaluates the residual polynomial r_n(y) or ᵃr_n(y); r_n(0) = 1 exactly.
pub fn residual_eval(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    kind: ResidualKind,
    n: usize,
    y: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::invalid("y", y, "residual polynomials are evaluated on [0, 1]"));
    }
    if kind == ResidualKind::Asymmetric && !scheme.is_symmetric() {
        return Err(Error::invalid(
            "scheme",
            scheme.label(),
            "asymmetric residuals need a symmetric family",
        ));
    }
    let degree = kind.polynomial_degree(n);
    eval_ratio(scheme, dilation, degree, kind.argument(y), 1.0)
}

/// Evaluates through P_n^* = λ P_n + (1 − λ) P_m P_{n−m}^{(m)} for n > m, and
/// P_n^* = P_n for n ≤ m. Independent of the dilated recurrence itself.
pub fn eval_codilated_via_representation(
    scheme: &RecurrenceScheme,
    dilation: CoDilation,
    n: usize,
    x: f64,
) -> Result<f64> {
    let base = eval_monic(scheme, None, n, x);
    if n <= dilation.m {
        return Ok(base);
    }
    let numerator = scheme.numerator(dilation.m)?;
    let pm = eval_monic(scheme, None, dilation.m, x);
    let q = eval_monic(&numerator, None, n - dilation.m, x);
    Ok(dilation.lambda * base + (1.0 - dilation.lambda) * pm * q)
}
