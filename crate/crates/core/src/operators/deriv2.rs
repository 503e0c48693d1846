//! Galerkin discretization of the first-kind Fredholm equation
//!
//! ```text
//! ∫_0^1 k(s,t) f(t) dt = g(s),   k(s,t) = t(s−1) for t < s,  s(t−1) for s ≤ t,
//! g(s) = (s³ − s)/6,             f(t) = t,
//! ```
//!
//! with orthonormal box functions φ_i = h^{−1/2} 1_{[(i−1)h, ih]}, h = 1/N.
//! The kernel is the Green's function of −d²/ds² with Dirichlet conditions,
//! so the singular values of the continuum operator are (kπ)^{−2}.
//!
//! All entries are integrated exactly; the expressions below are expanded
//! about the cell ends so that no O(1) terms cancel.

use super::operator::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Deriv2Problem {
    pub n_points: usize,
    pub matrix: DenseMatrix,
    pub g_vector: Vec<f64>,
    pub f_exact: Vec<f64>,
}

pub fn deriv2_assemble(n: usize) -> Result<Deriv2Problem> {
    if n < 2 {
        return Err(Error::invalid("N", n, "deriv2 needs at least 2 points"));
    }
    let h = 1.0 / n as f64;
    let h2 = h * h;
    let mut matrix = DenseMatrix::zeros(n, n);
    for i in 1..=n {
        let fi = i as f64;
        // diagonal cell: (1/h) ∫∫ over the cell, split along s = t
        let diag = h2 * ((fi * fi - fi + 0.25) * h - (fi - 2.0 / 3.0));
        matrix.set(i - 1, i - 1, diag);
        for j in 1..i {
            // t in cell j lies entirely below s in cell i: kernel t(s−1) factorizes
            let v = h2 * (j as f64 - 0.5) * ((fi - 0.5) * h - 1.0);
            matrix.set(i - 1, j - 1, v);
            matrix.set(j - 1, i - 1, v);
        }
    }

    let sqrt_h = h.sqrt();
    let mut g_vector = Vec::with_capacity(n);
    let mut f_exact = Vec::with_capacity(n);
    for i in 1..=n {
        let c = (i as f64 - 0.5) * h;
        // ∫ s³ over the cell = h(c³ + c h²/4), ∫ s = h c
        g_vector.push(sqrt_h * (c * c * c + c * h2 / 4.0 - c) / 6.0);
        f_exact.push(sqrt_h * c);
    }

    Ok(Deriv2Problem {
        n_points: n,
        matrix,
        g_vector,
        f_exact,
    })
}
