//! Real zeros by sign-change scanning on an angular grid plus bisection.
//!
//! Zeros of degree-d polynomials orthogonal on [−1, 1] are spaced roughly π/d
//! apart in the angle θ = arccos x, so the scan is uniform in θ with 50·d
//! points. A sign-change bracket is then bisected in the reported variable
//! (x or y) down to [`ZERO_TOLERANCE`].

use super::eval::{eval_scaled, ResidualKind};
use super::scheme::{CoDilation, RecurrenceScheme};

pub const ZERO_TOLERANCE: f64 = 1e-13;
pub const GRID_POINTS_PER_DEGREE: usize = 50;

/// Zeros located in the scanned interval, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    /// Degree of the polynomial whose zeros are reported (residual degree
    /// for residual polynomials).
    pub degree: usize,
    pub lambda: f64,
    pub zeros: Vec<f64>,
}

impl ZeroReport {
    pub fn smallest(&self) -> Option<f64> {
        self.zeros.first().copied()
    }

    pub fn largest(&self) -> Option<f64> {
        self.zeros.last().copied()
    }
}

/// Angle ↔ variable map of one scan.
trait Chart {
    fn to_var(&self, theta: f64) -> f64;
    fn to_x(&self, var: f64) -> f64;
}

struct PolynomialChart;

impl Chart for PolynomialChart {
    fn to_var(&self, theta: f64) -> f64 {
        theta.cos()
    }
    fn to_x(&self, var: f64) -> f64 {
        var
    }
}

struct ResidualChart(ResidualKind);

impl Chart for ResidualChart {
    fn to_var(&self, theta: f64) -> f64 {
        match self.0 {
            ResidualKind::Symmetric => (0.5 * theta).sin().powi(2),
            ResidualKind::Asymmetric => theta.sin().powi(2),
        }
    }
    fn to_x(&self, var: f64) -> f64 {
        self.0.argument(var)
    }
}

fn scan<C: Chart>(
    chart: &C,
    theta_max: f64,
    sign_at: impl Fn(f64) -> f64,
    degree: usize,
) -> Vec<f64> {
    let points = GRID_POINTS_PER_DEGREE * degree.max(1);
    let vars: Vec<f64> = (0..=points)
        .map(|i| chart.to_var(theta_max * i as f64 / points as f64))
        .collect();
    let signs: Vec<f64> = vars.iter().map(|&v| sign_at(chart.to_x(v))).collect();

    let mut zeros = Vec::new();
    for i in 0..points {
        if signs[i] == 0.0 {
            zeros.push(vars[i]);
            continue;
        }
        if signs[i] * signs[i + 1] < 0.0 {
            zeros.push(bisect(chart, &sign_at, vars[i], vars[i + 1], signs[i]));
        }
    }
    if signs[points] == 0.0 {
        zeros.push(vars[points]);
    }
    zeros.sort_by(|a, b| a.total_cmp(b));
    zeros.dedup();
    zeros
}

fn bisect<C: Chart>(chart: &C, sign_at: &impl Fn(f64) -> f64, a: f64, b: f64, sign_a: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    while (hi - lo).abs() > ZERO_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let s = sign_at(chart.to_x(mid));
        if s == 0.0 {
            return mid;
        }
        if s == sign_a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn lambda_of(dilation: Option<CoDilation>) -> f64 {
    dilation.map_or(1.0, |d| d.lambda)
}

/// Zeros of P_n (or P_n^*) in [−1, 1].
pub fn polynomial_zeros(scheme: &RecurrenceScheme, dilation: Option<CoDilation>, n: usize) -> ZeroReport {
    let sign_at = |x: f64| eval_scaled(scheme, dilation, n, x).signum();
    let zeros = if n == 0 {
        Vec::new()
    } else {
        scan(&PolynomialChart, std::f64::consts::PI, sign_at, n)
    };
    ZeroReport {
        degree: n,
        lambda: lambda_of(dilation),
        zeros,
    }
}

/// Zeros of the residual polynomial r_n or ᵃr_n in [0, 1].
///
/// Roots that leave the interval (supercritical dilation) are simply not
/// reported, so fewer than `n` zeros is an expected outcome there.
pub fn find_zeros(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    kind: ResidualKind,
    n: usize,
) -> ZeroReport {
    let degree = kind.polynomial_degree(n);
    let theta_max = match kind {
        ResidualKind::Symmetric => std::f64::consts::PI,
        ResidualKind::Asymmetric => std::f64::consts::FRAC_PI_2,
    };
    let sign_at = |x: f64| eval_scaled(scheme, dilation, degree, x).signum();
    let zeros = if n == 0 {
        Vec::new()
    } else {
        scan(&ResidualChart(kind), theta_max, sign_at, degree)
    };
    ZeroReport {
        degree: n,
        lambda: lambda_of(dilation),
        zeros,
    }
}
