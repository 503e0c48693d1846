use std::io::{self, Write};

use rayon::prelude::*;

use codil_core::orthopoly::{find_zeros, CoDilation, RecurrenceScheme, ResidualKind};
use codil_core::solvers::{solve, StopReason};

use crate::error::{CliError, Result};
use crate::spec::ExperimentSpec;

#[derive(Debug, Clone, PartialEq)]
pub enum RowOutcome {
    Stopped(StopReason),
    Failed(String),
}

impl std::fmt::Display for RowOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowOutcome::Stopped(r) => write!(f, "{r}"),
            RowOutcome::Failed(msg) => write!(f, "error: {}", msg.replace(',', ";")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub iterations: Option<usize>,
    pub outcome: RowOutcome,
    pub final_residual: Option<f64>,
    pub smallest_zero: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Smallest zero in [0, 1] of the asymmetric co-dilated ultraspherical residual of degree n.
pub fn smallest_asymmetric_zero(nu: f64, lambda: f64, n: usize) -> Result<Option<f64>> {
    let scheme = RecurrenceScheme::ultraspherical(nu)?;
    let dilation = CoDilation::first(lambda)?;
    Ok(find_zeros(&scheme, Some(dilation), ResidualKind::Asymmetric, n).smallest())
}

fn sweep_row(spec: &ExperimentSpec, lambda: f64) -> SweepRow {
    let mut point = spec.clone();
    point.solver.lambda = lambda;
    point.output = None;
    let smallest_zero = spec
        .zero_degree
        .and_then(|n| smallest_asymmetric_zero(spec.solver.nu, lambda, n).ok().flatten());
    let solved = point.build().and_then(|(op, g)| Ok(solve(&op, &g, &point.solver)?));
    match solved {
        Ok(report) => SweepRow {
            lambda,
            iterations: Some(report.iterations),
            outcome: RowOutcome::Stopped(report.stop_reason),
            final_residual: Some(report.final_residual()),
            smallest_zero,
        },
        Err(e) => SweepRow {
            lambda,
            iterations: None,
            outcome: RowOutcome::Failed(e.to_string()),
            final_residual: None,
            smallest_zero,
        },
    }
}

/// One solve per grid point on the rayon pool; rows come back sorted by λ.
pub fn sweep(spec: &ExperimentSpec) -> Result<SweepResult> {
    let grid = spec
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("sweep", "no sweep grid given"))?;
    grid.validate()?;
    let mut rows: Vec<SweepRow> = grid
        .points()
        .into_par_iter()
        .map(|lambda| sweep_row(spec, lambda))
        .collect();
    rows.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let result = SweepResult { rows };
    if let Some(path) = &spec.output {
        let file = io::BufWriter::new(std::fs::File::create(path)?);
        result.write_csv(file, spec)?;
    }
    Ok(result)
}

/// Same as [`sweep`] but on the calling thread only.
pub fn sweep_serial(spec: &ExperimentSpec) -> Result<SweepResult> {
    let grid = spec
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("sweep", "no sweep grid given"))?;
    grid.validate()?;
    let rows = grid.points().into_iter().map(|l| sweep_row(spec, l)).collect();
    Ok(SweepResult { rows })
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, mut out: W, spec: &ExperimentSpec) -> io::Result<()> {
        writeln!(out, "# problem={} n={}", spec.problem.name(), spec.problem.size())?;
        writeln!(
            out,
            "# method={} nu={} omega={} tau={} epsilon={} seed={} noise={}",
            spec.solver.method,
            spec.solver.nu,
            spec.solver.omega,
            spec.solver.tau,
            spec.solver.epsilon,
            spec.seed,
            spec.noise
        )?;
        writeln!(out, "# zero_degree={}", opt(spec.zero_degree))?;
        writeln!(out, "lambda,iterations,stop_reason,final_residual,smallest_zero")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.lambda,
                opt(r.iterations),
                r.outcome,
                opt(r.final_residual),
                opt(r.smallest_zero)
            )?;
        }
        Ok(())
    }
}
