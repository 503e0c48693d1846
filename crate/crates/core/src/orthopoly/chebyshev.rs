//! Trigonometric closed forms of the monic Chebyshev polynomials. These are
//! the oracle for recurrence evaluation of the U, T and co-dilated U^* families.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChebyshevKind {
    /// First kind, T_n(cos t) = cos(nt) / 2^{n−1}
    T,
    /// Second kind, U_n(cos t) = sin((n+1)t) / (2^n sin t)
    U,
    /// Co-dilated second kind, U_n^* = (2 − λ) U_n + (λ − 1) T_n
    Star(f64),
}

fn monic_t(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let scale = 2f64.powi(1 - n as i32);
    if x == 1.0 {
        return scale;
    }
    if x == -1.0 {
        return if n.is_multiple_of(2) { scale } else { -scale };
    }
    scale * (n as f64 * x.acos()).cos()
}

fn monic_u(n: usize, x: f64) -> f64 {
    let scale = 2f64.powi(-(n as i32));
    let at_one = (n as f64 + 1.0) * scale;
    if x == 1.0 {
        return at_one;
    }
    if x == -1.0 {
        return if n.is_multiple_of(2) { at_one } else { -at_one };
    }
    let t = x.acos();
    // sin(acos x) loses accuracy near ±1; the product form does not
    let sin_t = ((1.0 - x) * (1.0 + x)).sqrt();
    scale * ((n as f64 + 1.0) * t).sin() / sin_t
}

/// Evaluates the monic Chebyshev polynomial of the given kind at x ∈ [−1, 1].
pub fn chebyshev_closed(kind: ChebyshevKind, n: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::invalid("x", x, "closed forms are only valid on [-1, 1]"));
    }
    Ok(match kind {
        ChebyshevKind::T => monic_t(n, x),
        ChebyshevKind::U => monic_u(n, x),
        ChebyshevKind::Star(lambda) => (2.0 - lambda) * monic_u(n, x) + (lambda - 1.0) * monic_t(n, x),
    })
}
