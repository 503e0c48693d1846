use std::io::{self, Write};

use super::config::{Method, SolverConfig, StopReason};

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub method: Method,
    pub iterations: usize,
    pub stop_reason: StopReason,
    /// ‖g − A f_n‖ for n = 0..=iterations; ‖v_min‖ for the adaptive method.
    pub residual_history: Vec<f64>,
    pub f_final: Vec<f64>,
    pub chosen_lambda: Option<f64>,
    pub gamma_final: Option<f64>,
    pub warnings: Vec<String>,
}

impl SolveReport {
    pub fn final_residual(&self) -> f64 {
        *self.residual_history.last().unwrap_or(&f64::NAN)
    }

    /// Header block of `# key=value` lines, then `n,residual_norm` rows.
    pub fn write_csv<W: Write>(
        &self,
        mut out: W,
        config: &SolverConfig,
        seed: Option<u64>,
    ) -> io::Result<()> {
        writeln!(out, "# method={}", self.method)?;
        writeln!(out, "# nu={}", config.nu)?;
        writeln!(out, "# lambda={}", config.lambda)?;
        writeln!(out, "# omega={}", config.omega)?;
        writeln!(out, "# tau={}", config.tau)?;
        writeln!(out, "# epsilon={}", config.epsilon)?;
        match seed {
            Some(s) => writeln!(out, "# seed={s}")?,
            None => writeln!(out, "# seed=")?,
        }
        writeln!(out, "# stop_reason={}", self.stop_reason)?;
        writeln!(out, "# iterations={}", self.iterations)?;
        match self.chosen_lambda {
            Some(l) => writeln!(out, "# chosen_lambda={l}")?,
            None => writeln!(out, "# chosen_lambda=")?,
        }
        writeln!(out, "n,residual_norm")?;
        for (n, r) in self.residual_history.iter().enumerate() {
            writeln!(out, "{n},{r:e}")?;
        }
        Ok(())
    }
}
