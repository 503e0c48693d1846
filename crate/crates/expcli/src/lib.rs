//! Experiment front end: test problems, single solves, λ-sweeps, the deriv2
//! comparison table and zero curves, all emitted as CSV.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` rejects NaN on purpose

pub mod checks;
pub mod config;
pub mod error;
pub mod spec;
pub mod sweep;
pub mod table1;

pub use error::{CliError, Result};
pub use spec::{run, ExperimentSpec, ProblemKind, ProblemOperator, SweepGrid, REFERENCE_SEED};
pub use sweep::{smallest_asymmetric_zero, sweep, sweep_serial, RowOutcome, SweepResult, SweepRow};
pub use table1::{run_entry, table1, write_table1_csv, Table1Entry, Table1Row, TABLE1};
