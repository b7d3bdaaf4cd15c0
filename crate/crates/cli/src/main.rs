//! `igusa`: exact local zeta functions from problem files.
//!
//! Exit codes: 0 ok, 1 parse or invalid input, 2 degenerate, 3 size guard,
//! 4 oracle violation.

mod report;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use igusa_core::counting::CountError;
use igusa_core::oracle::{truncated_integral, OracleError};
use igusa_core::pipeline::{Computation, PipelineError};
use num_rational::BigRational;
use num_traits::One;

use report::{CheckSweep, ComputeReport, OracleReport, PolesReport, PrimeCheck, ProblemJson, Report};
use spec::{parse_spec, ProblemSpec};

#[derive(Parser)]
#[command(
    name = "igusa",
    version,
    about = "Exact Igusa local zeta functions via Newton polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Problem file.
    file: PathBuf,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble Z(s) with the ray and cone tables and the candidate poles.
    Compute {
        #[command(flatten)]
        common: Common,
        /// Compute even when a non-degeneracy check fails; the output is marked.
        #[arg(long)]
        override_degenerate: bool,
    },
    /// Run only the non-degeneracy checks.
    Check {
        #[command(flatten)]
        common: Common,
        /// Check each of these primes instead of the file's `p`.
        #[arg(long, value_delimiter = ',')]
        sweep: Vec<u64>,
    },
    /// Compare Z(s0) with a brute-force bracket of the integral.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        override_degenerate: bool,
        /// Truncation level M: residues are enumerated modulo p^M.
        #[arg(long, default_value_t = 8)]
        level: u32,
        /// Integer point s0 >= 1 at which to compare.
        #[arg(long, default_value_t = 1)]
        s0: u32,
        /// Adds 1 to the formula value before comparing (negative control).
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// List the candidate poles without assembling Z.
    Poles {
        #[command(flatten)]
        common: Common,
    },
    /// Re-render a JSON report as text.
    Render {
        /// JSON file written by `--json`.
        file: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Degenerate(String),
    SizeGuard(String),
    Violation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Degenerate(_) => 2,
            Failure::SizeGuard(_) => 3,
            Failure::Violation(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Degenerate(m) | Failure::SizeGuard(m) | Failure::Violation(m) => m,
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Degenerate(_) => {
                Failure::Degenerate(format!("{e}\nrerun with --override-degenerate to compute anyway"))
            }
            PipelineError::Count(CountError::TooLarge { .. }) => Failure::SizeGuard(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } | OracleError::Count(CountError::TooLarge { .. }) => {
                Failure::SizeGuard(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

/// A finished report and its exit code; only `check` reports with a
/// nonzero code.
struct Outcome {
    report: Report,
    code: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, code: 0 }
    }
}

fn load(path: &Path) -> Result<ProblemSpec, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn computation(spec: &ProblemSpec, override_degenerate: bool) -> Result<Computation, Failure> {
    let problem = spec.problem().map_err(|e| Failure::Input(e.to_string()))?;
    Ok(problem.compute(override_degenerate)?)
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Compute {
            common,
            override_degenerate,
        } => {
            let spec = load(&common.file)?;
            let c = computation(&spec, *override_degenerate)?;
            Ok(Report::Compute(ComputeReport::new(&spec, &c)).into())
        }
        Command::Check { common, sweep } => {
            let spec = load(&common.file)?;
            let primes = if sweep.is_empty() {
                vec![spec.p]
            } else {
                sweep.clone()
            };
            let mut checks = Vec::new();
            for &p in &primes {
                let problem = spec.problem_at(p).map_err(|e| Failure::Input(e.to_string()))?;
                let partition = problem.partition()?;
                checks.push(PrimeCheck::new(&problem.check(&partition)?));
            }
            let sweep = CheckSweep {
                problem: ProblemJson::new(&spec),
                primes: checks,
            };
            let code = if sweep.ok() { 0 } else { 2 };
            Ok(Outcome {
                report: Report::Check(sweep),
                code,
            })
        }
        Command::Oracle {
            common,
            override_degenerate,
            level,
            s0,
            corrupt,
        } => {
            let spec = load(&common.file)?;
            let c = computation(&spec, *override_degenerate)?;
            let mut value = c.zeta().at_s(*s0).map_err(|e| Failure::Input(e.to_string()))?;
            if *corrupt {
                value += BigRational::one();
            }
            let problem = &c.problem;
            let bracket = truncated_integral(&problem.fside, &problem.measure, problem.p, *s0, *level)?;
            if !bracket.contains(&value) {
                return Err(Failure::Violation(format!(
                    "bracket violation: Z({s0}) = {value} lies outside {bracket} at level {level}"
                )));
            }
            Ok(Report::Oracle(OracleReport {
                problem: ProblemJson::new(&spec),
                watermark: c.watermark.map(str::to_string),
                s0: *s0,
                level: *level,
                formula: value.to_string(),
                lo: bracket.lo.to_string(),
                hi: bracket.hi.to_string(),
                contained: true,
            })
            .into())
        }
        Command::Poles { common } => {
            let spec = load(&common.file)?;
            let problem = spec.problem().map_err(|e| Failure::Input(e.to_string()))?;
            Ok(Report::Poles(PolesReport::new(&spec, &problem.partition()?)).into())
        }
        Command::Render { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let report: Report = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            Ok(report.into())
        }
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Compute { common, .. }
        | Command::Check { common, .. }
        | Command::Oracle { common, .. }
        | Command::Poles { common } => common.json,
        Command::Render { .. } => false,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = run(&cli.command).and_then(|o| {
        let text = if wants_json(&cli.command) {
            serde_json::to_string_pretty(&o.report)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string())
        } else {
            report::render(&o.report)
        };
        text.map(|t| (t, o.code)).map_err(Failure::Input)
    });
    match outcome {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
