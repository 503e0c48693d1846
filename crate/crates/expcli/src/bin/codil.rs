use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use codil_core::operators::NoiseModel;
use codil_core::orthopoly::{find_zeros, CoDilation, RecurrenceScheme, ResidualKind};
use codil_core::solvers::StopReason;
use codil_expcli::checks::run_checks;
use codil_expcli::config::{parse_config, spec_from_pairs};
use codil_expcli::{run, sweep, table1, write_table1_csv, CliError, SweepGrid, REFERENCE_SEED};

const EXIT_CONFIG: u8 = 1;
const EXIT_MAX_ITER: u8 = 2;

#[derive(Parser)]
#[command(name = "codil", version, about = "Co-dilated semi-iterative regularization experiments")]
struct Cli {
    /// key=value file applied before command-line flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solve and write its residual history
    Solve(ExperimentArgs),
    /// Run one solve per dilation value
    Sweep {
        #[command(flatten)]
        experiment: ExperimentArgs,
        /// min:max:step
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
        /// comma-separated λ values
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        /// attach the smallest zero of the degree-n asymmetric residual
        #[arg(long)]
        zero_degree: Option<usize>,
    },
    /// Reproduce the deriv2 comparison table
    Table1 {
        #[arg(long, default_value_t = REFERENCE_SEED)]
        seed: u64,
        /// include the Landweber row (slow)
        #[arg(long)]
        landweber: bool,
        #[arg(long, default_value = "white")]
        noise: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest residual zero against λ
    Zeros {
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
        /// `asymmetric` or `symmetric`
        #[arg(long, default_value = "asymmetric")]
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suites
    Checks,
}

#[derive(Args, Default)]
struct ExperimentArgs {
    /// eq36, eq37 or deriv2
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// landweber, general, ultraspherical, asymmetric, nu, adaptive, cg
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    max_iter: Option<String>,
    /// white (i.i.d. N(0, ε²) entries) or unit (‖noise‖ = ε)
    #[arg(long)]
    noise: Option<String>,
    /// allow λ at or beyond 2ν
    #[arg(long)]
    supercritical: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ExperimentArgs {
    fn pairs(&self) -> Vec<(String, String)> {
        let mut p = Vec::new();
        let fields = [
            ("problem", &self.problem),
            ("n", &self.n),
            ("method", &self.method),
            ("nu", &self.nu),
            ("lambda", &self.lambda),
            ("omega", &self.omega),
            ("eps", &self.eps),
            ("tau", &self.tau),
            ("seed", &self.seed),
            ("max-iter", &self.max_iter),
            ("noise", &self.noise),
        ];
        for (k, v) in fields {
            if let Some(v) = v {
                p.push((k.to_string(), v.clone()));
            }
        }
        if self.supercritical {
            p.push(("supercritical".into(), "true".into()));
        }
        if let Some(out) = &self.out {
            p.push(("out".into(), out.display().to_string()));
        }
        p
    }
}

fn config_pairs(path: &Option<PathBuf>) -> Result<Vec<(String, String)>, CliError> {
    match path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
            parse_config(&text)
        }
        None => Ok(Vec::new()),
    }
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    let base = config_pairs(&cli.config)?;
    match cli.command {
        Command::Solve(args) => {
            let mut pairs = base;
            pairs.extend(args.pairs());
            let spec = spec_from_pairs(&pairs)?;
            let report = run(&spec)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if spec.output.is_none() {
                report.write_csv(io::stdout().lock(), &spec.solver, Some(spec.seed))?;
            }
            eprintln!(
                "iterations={} stop_reason={} residual={:e}{}",
                report.iterations,
                report.stop_reason,
                report.final_residual(),
                report
                    .chosen_lambda
                    .map_or_else(String::new, |l| format!(" chosen_lambda={l}"))
            );
            Ok(if report.stop_reason == StopReason::MaxIter {
                EXIT_MAX_ITER
            } else {
                0
            })
        }
        Command::Sweep {
            experiment,
            sweep: range,
            lambdas,
            zero_degree,
        } => {
            let mut pairs = base;
            pairs.extend(experiment.pairs());
            if let Some(r) = range {
                pairs.retain(|(k, _)| k != "lambdas");
                pairs.push(("sweep".into(), r));
            }
            if let Some(l) = lambdas {
                pairs.retain(|(k, _)| k != "sweep");
                pairs.push(("lambdas".into(), l));
            }
            if let Some(z) = zero_degree {
                pairs.push(("zero-degree".into(), z.to_string()));
            }
            let spec = spec_from_pairs(&pairs)?;
            let result = sweep(&spec)?;
            if spec.output.is_none() {
                result.write_csv(io::stdout().lock(), &spec)?;
            }
            info!("{} sweep rows", result.rows.len());
            Ok(0)
        }
        Command::Table1 {
            seed,
            landweber,
            noise,
            out,
        } => {
            let noise: NoiseModel = noise
                .parse()
                .map_err(|e: codil_core::Error| CliError::config("noise", e.to_string()))?;
            let rows = table1(seed, landweber, noise);
            let mut w = output(&out)?;
            write_table1_csv(&mut w, &rows, seed, noise)?;
            w.flush()?;
            Ok(0)
        }
        Command::Zeros {
            nu,
            degree,
            lambda,
            sweep: range,
            kind,
            out,
        } => {
            let kind = match kind.as_str() {
                "asymmetric" => ResidualKind::Asymmetric,
                "symmetric" => ResidualKind::Symmetric,
                other => return Err(CliError::config("kind", format!("unknown kind `{other}`"))),
            };
            if degree == 0 {
                return Err(CliError::config("degree", "must be at least 1"));
            }
            let lambdas = match (lambda, range) {
                (Some(l), None) => vec![l],
                (None, Some(r)) => SweepGrid::parse_range(&r)?.points(),
                _ => return Err(CliError::config("lambda", "give exactly one of --lambda or --sweep")),
            };
            let scheme = RecurrenceScheme::ultraspherical(nu)?;
            let mut w = output(&out)?;
            writeln!(w, "# nu={nu} degree={degree}")?;
            writeln!(w, "lambda,smallest_zero,zeros_in_interval")?;
            for l in lambdas {
                let z = find_zeros(&scheme, Some(CoDilation::first(l)?), kind, degree);
                let smallest = z.smallest().map_or_else(String::new, |v| v.to_string());
                writeln!(w, "{l},{smallest},{}", z.zeros.len())?;
            }
            w.flush()?;
            Ok(0)
        }
        Command::Checks => {
            let results = run_checks();
            let mut failed = 0;
            for r in &results {
                println!("[{}] {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                failed += usize::from(!r.passed);
            }
            Ok(if failed == 0 { 0 } else { EXIT_CONFIG })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
