use super::eval::{residual_eval, ResidualKind};
use super::scheme::{CoDilation, RecurrenceScheme};
use super::zeros::GRID_POINTS_PER_DEGREE;
use crate::error::{Error, Result};

const GOLDEN_TOLERANCE: f64 = 1e-10;

/// Moduli of convergence
///
/// ```text
/// ε_s(n)   = sup_{y∈[0,1]} |y^{s/2} r_n(y)|
/// ε_s^S(n) = sup_{y∈[0,1]} |y^{s/2} (1−y)^{s/2} r_n(y)|   (symmetric_weight)
/// ```
///
/// The supremum is taken over an angular grid of 50·degree points and
/// refined by golden-section search around the best grid point.
pub fn modulus_of_convergence(
    scheme: &RecurrenceScheme,
    dilation: Option<CoDilation>,
    kind: ResidualKind,
    n: usize,
    s: f64,
    symmetric_weight: bool,
) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::invalid("s", s, "smoothness index must be non-negative"));
    }
    if n < 1 {
        return Err(Error::invalid("n", n, "modulus is defined for n >= 1"));
    }
    let half_s = 0.5 * s;
    let weighted = |theta: f64| -> Result<f64> {
        // y = sin²(θ/2) covers [0, 1] for θ ∈ [0, π]
        let y = (0.5 * theta).sin().powi(2).clamp(0.0, 1.0);
        let mut w = y.powf(half_s);
        if symmetric_weight {
            w *= (1.0 - y).powf(half_s);
        }
        Ok(w * residual_eval(scheme, dilation, kind, n, y)?.abs())
    };

    let pi = std::f64::consts::PI;
    let points = GRID_POINTS_PER_DEGREE * kind.polynomial_degree(n);
    let h = pi / points as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..=points {
        let v = weighted(h * i as f64)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let lo = h * best.0.saturating_sub(1) as f64;
    let hi = (h * (best.0 + 1) as f64).min(pi);
    let refined = golden_section_max(&weighted, lo, hi)?;
    Ok(best.1.max(refined))
}

fn golden_section_max(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a) > GOLDEN_TOLERANCE {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(fc.max(fd))
}
