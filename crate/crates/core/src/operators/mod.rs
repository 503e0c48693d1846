//! Linear operators and the concrete test problems.

mod deriv2;
mod noise;
mod norm;
mod operator;

pub use deriv2::{deriv2_assemble, Deriv2Problem};
pub use noise::{
    add_noise, add_noise_with, gaussian_vector, noise_vector, NoiseModel, NoisyProblem,
};
pub use norm::{operator_norm_sq, NormEstimate, DEFAULT_NORM_MAX_ITERS, DEFAULT_NORM_TOL};
pub use operator::{adjoint_mismatch, dot, norm2, DenseMatrix, DiagonalOperator, LinearOperator};

use std::io::{self, Write};

/// Writes a matrix as CSV, one row per line.
pub fn write_matrix_csv<W: Write>(mut out: W, matrix: &DenseMatrix) -> io::Result<()> {
    for i in 0..matrix.rows() {
        let line: Vec<String> = matrix.row(i).iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Writes a vector as CSV, one entry per line.
pub fn write_vector_csv<W: Write>(mut out: W, v: &[f64]) -> io::Result<()> {
    for x in v {
        writeln!(out, "{x}")?;
    }
    Ok(())
}
