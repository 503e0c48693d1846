//! Experiment specifications: which problem, which solver, which noise.

use std::path::PathBuf;

use codil_core::operators::{
    deriv2_assemble, noise_vector, DenseMatrix, DiagonalOperator, LinearOperator, NoiseModel,
};
use codil_core::solvers::{solve, Method, SolveReport, SolverConfig};

use crate::error::{CliError, Result};

pub const REFERENCE_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// A = diag(1, 1/2, …, 1/N), g = e_N + noise.
    TestEq36 { n: usize },
    /// A = diag(1, 1/2, …, 1/N), g = e_2 + noise.
    TestEq37 { n: usize },
    Deriv2 { n: usize },
}

impl ProblemKind {
    pub fn parse(name: &str, n: Option<usize>) -> Result<Self> {
        Ok(match name {
            "eq36" => ProblemKind::TestEq36 { n: n.unwrap_or(100) },
            "eq37" => ProblemKind::TestEq37 { n: n.unwrap_or(100) },
            "deriv2" => ProblemKind::Deriv2 { n: n.unwrap_or(50) },
            other => {
                return Err(CliError::config(
                    "problem",
                    format!("unknown problem `{other}` (expected eq36, eq37 or deriv2)"),
                ))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::TestEq36 { .. } => "eq36",
            ProblemKind::TestEq37 { .. } => "eq37",
            ProblemKind::Deriv2 { .. } => "deriv2",
        }
    }

    pub fn size(self) -> usize {
        match self {
            ProblemKind::TestEq36 { n } | ProblemKind::TestEq37 { n } | ProblemKind::Deriv2 { n } => n,
        }
    }

    pub fn default_omega(self) -> f64 {
        match self {
            ProblemKind::Deriv2 { .. } => 96.5,
            _ => 1.0,
        }
    }

    /// Operator and noiseless right-hand side.
    pub fn assemble(self) -> Result<(ProblemOperator, Vec<f64>)> {
        match self {
            ProblemKind::TestEq36 { n } | ProblemKind::TestEq37 { n } => {
                let min = if matches!(self, ProblemKind::TestEq37 { .. }) { 2 } else { 1 };
                if n < min {
                    return Err(CliError::config("n", format!("must be at least {min}")));
                }
                let mut g = vec![0.0; n];
                match self {
                    ProblemKind::TestEq36 { .. } => g[n - 1] = 1.0,
                    _ => g[1] = 1.0,
                }
                Ok((ProblemOperator::Diagonal(DiagonalOperator::harmonic(n)?), g))
            }
            ProblemKind::Deriv2 { n } => {
                let p = deriv2_assemble(n)?;
                Ok((ProblemOperator::Dense(p.matrix), p.g_vector))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemOperator {
    Diagonal(DiagonalOperator),
    Dense(DenseMatrix),
}

impl LinearOperator for ProblemOperator {
    fn domain_dim(&self) -> usize {
        match self {
            ProblemOperator::Diagonal(d) => d.domain_dim(),
            ProblemOperator::Dense(m) => m.domain_dim(),
        }
    }
    fn range_dim(&self) -> usize {
        match self {
            ProblemOperator::Diagonal(d) => d.range_dim(),
            ProblemOperator::Dense(m) => m.range_dim(),
        }
    }
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        match self {
            ProblemOperator::Diagonal(d) => d.apply(x, out),
            ProblemOperator::Dense(m) => m.apply(x, out),
        }
    }
    fn apply_adjoint(&self, y: &[f64], out: &mut [f64]) {
        match self {
            ProblemOperator::Diagonal(d) => d.apply_adjoint(y, out),
            ProblemOperator::Dense(m) => m.apply_adjoint(y, out),
        }
    }
}

/// λ values of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepGrid {
    Range { min: f64, max: f64, step: f64 },
    List(Vec<f64>),
}

impl SweepGrid {
    /// Parses `min:max:step`.
    pub fn parse_range(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::config("sweep", "expected min:max:step"));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::config("sweep", format!("`{s}` is not a number")))
        };
        let (min, max, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        let grid = SweepGrid::Range { min, max, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn parse_list(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::config("lambdas", format!("`{s}` is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        let grid = SweepGrid::List(values);
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SweepGrid::Range { min, max, step } => {
                if !(min.is_finite() && max.is_finite() && step.is_finite()) {
                    return Err(CliError::config("sweep", "bounds and step must be finite"));
                }
                if !(*step > 0.0) {
                    return Err(CliError::config("sweep", "step must be > 0"));
                }
                if max < min {
                    return Err(CliError::config("sweep", "max must be >= min"));
                }
                if (max - min) / step > 1e6 {
                    return Err(CliError::config("sweep", "more than 10^6 points"));
                }
            }
            SweepGrid::List(values) => {
                if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
                    return Err(CliError::config("lambdas", "need finite values"));
                }
            }
        }
        Ok(())
    }

    /// Grid points in ascending order. Range points are min + k·step, so no
    /// error accumulates along the grid.
    pub fn points(&self) -> Vec<f64> {
        let mut pts = match self {
            SweepGrid::Range { min, max, step } => {
                let count = ((max - min) / step + 1e-9).floor() as usize;
                (0..=count).map(|k| min + k as f64 * step).collect()
            }
            SweepGrid::List(values) => values.clone(),
        };
        pts.sort_by(f64::total_cmp);
        pts
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub problem: ProblemKind,
    pub solver: SolverConfig,
    pub noise: NoiseModel,
    pub seed: u64,
    pub sweep: Option<SweepGrid>,
    /// Degree of ᵃr_n^* whose smallest zero is attached to sweep rows.
    pub zero_degree: Option<usize>,
    pub output: Option<PathBuf>,
}

impl ExperimentSpec {
    /// Problem defaults: ε = 0.01, τ = 4, ω by problem, co-dilated ν-method.
    pub fn new(problem: ProblemKind) -> Self {
        let solver = SolverConfig::new(Method::CoDilatedNu)
            .with_omega(problem.default_omega())
            .with_epsilon(0.01)
            .with_tau(4.0);
        Self {
            problem,
            solver,
            noise: NoiseModel::White,
            seed: REFERENCE_SEED,
            sweep: None,
            zero_degree: None,
            output: None,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.solver.method = method;
        self.solver.max_iter = method.default_max_iter();
        self
    }

    /// Operator and noisy right-hand side g + ε·w.
    pub fn build(&self) -> Result<(ProblemOperator, Vec<f64>)> {
        let (op, mut g) = self.problem.assemble()?;
        let w = noise_vector(g.len(), self.solver.epsilon, self.seed, self.noise);
        g.iter_mut().zip(&w).for_each(|(gi, wi)| *gi += wi);
        Ok((op, g))
    }
}

/// Solves the experiment and writes the report CSV when an output is set.
pub fn run(spec: &ExperimentSpec) -> Result<SolveReport> {
    let (op, g) = spec.build()?;
    let report = solve(&op, &g, &spec.solver)?;
    if let Some(path) = &spec.output {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        report.write_csv(file, &spec.solver, Some(spec.seed))?;
    }
    Ok(report)
}
