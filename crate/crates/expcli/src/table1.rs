//! All configurations of the deriv2 comparison table.

use std::io::{self, Write};

use rayon::prelude::*;

use codil_core::operators::NoiseModel;
use codil_core::solvers::{solve, Method};

use crate::spec::{ExperimentSpec, ProblemKind};
use crate::sweep::RowOutcome;

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub method: Method,
    pub nu: Option<f64>,
    pub lambda: Option<f64>,
    pub iterations: Option<usize>,
    pub outcome: RowOutcome,
    pub chosen_lambda: Option<f64>,
    /// Count printed in the published table.
    pub published: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Entry {
    pub method: Method,
    pub nu: Option<f64>,
    pub lambda: Option<f64>,
    pub published: usize,
}

const fn nu_row(nu: f64, lambda: f64, published: usize) -> Table1Entry {
    Table1Entry {
        method: Method::CoDilatedNu,
        nu: Some(nu),
        lambda: Some(lambda),
        published,
    }
}

pub const TABLE1: [Table1Entry; 19] = [
    nu_row(1.0, 0.0, 1007),
    nu_row(1.0, 0.5, 1007),
    nu_row(1.0, 1.0, 1006),
    nu_row(1.0, 1.5, 1005),
    nu_row(1.0, 1.9, 998),
    nu_row(1.0, 1.99, 932),
    Table1Entry {
        method: Method::AdaptiveCoDilatedOne,
        nu: Some(1.0),
        lambda: None,
        published: 884,
    },
    nu_row(1.0, 1.9999, 1498),
    nu_row(2.0, 0.0, 1290),
    nu_row(2.0, 0.5, 1290),
    nu_row(2.0, 1.0, 1290),
    nu_row(2.0, 3.9, 1290),
    nu_row(2.0, 3.99, 1289),
    nu_row(2.0, 3.999, 1280),
    nu_row(2.0, 3.9999, 1184),
    nu_row(2.0, 3.99998, 886),
    Table1Entry {
        method: Method::CG,
        nu: None,
        lambda: None,
        published: 23,
    },
    Table1Entry {
        method: Method::Landweber,
        nu: None,
        lambda: None,
        published: 359_379,
    },
    // the published adaptive λ, run as a fixed dilation
    nu_row(1.0, 1.99716, 884),
];

pub fn run_entry(entry: &Table1Entry, seed: u64, noise: NoiseModel) -> Table1Row {
    let mut spec = ExperimentSpec::new(ProblemKind::Deriv2 { n: 50 }).with_method(entry.method);
    spec.seed = seed;
    spec.noise = noise;
    if let Some(nu) = entry.nu {
        spec.solver.nu = nu;
    }
    if let Some(lambda) = entry.lambda {
        spec.solver.lambda = lambda;
    }
    let solved = spec.build().and_then(|(op, g)| Ok(solve(&op, &g, &spec.solver)?));
    let (iterations, outcome, chosen_lambda) = match solved {
        Ok(r) => (Some(r.iterations), RowOutcome::Stopped(r.stop_reason), r.chosen_lambda),
        Err(e) => (None, RowOutcome::Failed(e.to_string()), None),
    };
    Table1Row {
        method: entry.method,
        nu: entry.nu,
        lambda: entry.lambda,
        iterations,
        outcome,
        chosen_lambda,
        published: entry.published,
    }
}

/// Runs every row (Landweber only when requested) in parallel, in table order.
pub fn table1(seed: u64, include_landweber: bool, noise: NoiseModel) -> Vec<Table1Row> {
    TABLE1
        .par_iter()
        .filter(|e| include_landweber || e.method != Method::Landweber)
        .map(|e| run_entry(e, seed, noise))
        .collect()
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn write_table1_csv<W: Write>(mut out: W, rows: &[Table1Row], seed: u64, noise: NoiseModel) -> io::Result<()> {
    writeln!(out, "# problem=deriv2 n=50 omega=96.5 tau=4 epsilon=0.01 seed={seed} noise={noise}")?;
    writeln!(out, "method,nu,lambda,iterations,stop_reason,chosen_lambda,published_iterations")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.method,
            opt(r.nu),
            opt(r.lambda),
            opt(r.iterations),
            r.outcome,
            opt(r.chosen_lambda),
            r.published
        )?;
    }
    Ok(())
}
