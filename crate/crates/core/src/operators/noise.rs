//! Seeded Gaussian perturbations of right-hand sides.
//!
//! Draws come from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha 0.9) mapped
//! through `rand_distr::StandardNormal` (rand_distr 0.5). The same seed and
//! dimension always give bit-identical noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::operator::{norm2, LinearOperator};
use crate::error::{Error, Result};

/// How the standard-normal draw w is scaled by the noise level ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseModel {
    /// w is normalized to unit Euclidean norm: ‖g^ε − g‖ = ε exactly.
    UnitNorm,
    /// w keeps i.i.d. N(0, 1) entries: each entry of g^ε − g has standard
    /// deviation ε, so ‖g^ε − g‖ ≈ ε √dim.
    White,
}

impl std::fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NoiseModel::UnitNorm => "unit",
            NoiseModel::White => "white",
        })
    }
}

impl std::str::FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" | "unit-norm" => Ok(NoiseModel::UnitNorm),
            "white" => Ok(NoiseModel::White),
            other => Err(Error::invalid("noise", other, "expected `unit` or `white`")),
        }
    }
}

/// Standard-normal vector of length `dim` for `seed`.
pub fn gaussian_vector(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// The perturbation ε·w for the given model.
pub fn noise_vector(dim: usize, epsilon: f64, seed: u64, model: NoiseModel) -> Vec<f64> {
    let w = gaussian_vector(dim, seed);
    let scale = match model {
        NoiseModel::UnitNorm => {
            let n = norm2(&w);
            if n > 0.0 {
                epsilon / n
            } else {
                0.0
            }
        }
        NoiseModel::White => epsilon,
    };
    w.into_iter().map(|v| v * scale).collect()
}

#[derive(Debug, Clone)]
pub struct NoisyProblem<O> {
    pub operator: O,
    pub g_clean: Vec<f64>,
    pub epsilon: f64,
    pub seed: u64,
    pub model: NoiseModel,
    pub g_noisy: Vec<f64>,
}

/// g^ε = g + ε w with unit-norm w, so that ε is the literal noise level.
pub fn add_noise<O: LinearOperator>(
    operator: O,
    g_clean: Vec<f64>,
    epsilon: f64,
    seed: u64,
) -> Result<NoisyProblem<O>> {
    add_noise_with(operator, g_clean, epsilon, seed, NoiseModel::UnitNorm)
}

pub fn add_noise_with<O: LinearOperator>(
    operator: O,
    g_clean: Vec<f64>,
    epsilon: f64,
    seed: u64,
    model: NoiseModel,
) -> Result<NoisyProblem<O>> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::invalid("epsilon", epsilon, "noise level must be finite and >= 0"));
    }
    if g_clean.len() != operator.range_dim() {
        return Err(Error::DimensionMismatch {
            expected: operator.range_dim(),
            found: g_clean.len(),
        });
    }
    let noise = noise_vector(g_clean.len(), epsilon, seed, model);
    let g_noisy = g_clean.iter().zip(&noise).map(|(g, w)| g + w).collect();
    Ok(NoisyProblem {
        operator,
        g_clean,
        epsilon,
        seed,
        model,
        g_noisy,
    })
}
