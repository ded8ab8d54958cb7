//! Command-line surface of the participation game engine.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 verification failure,
//! 3 unresolved trajectory.

pub mod args;
pub mod init;
pub mod report;
pub mod svg;
pub mod sweep;
pub mod trajectory_csv;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use flpart_core::oracle::{verify_batch, verify_config, OracleBudget};
use flpart_core::{simulate, GameError, TerminalKind};

pub use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        1
    }
}

/// How a successful invocation ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
    Unresolved,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 2,
            Status::Unresolved => 3,
        }
    }
}

pub(crate) fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut out = sink(path)?;
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    match &cli.command {
        Command::Equilibria(args) => {
            let cfg = args.game.resolve(None)?;
            emit(args.output.out.as_deref(), &report::equilibria_report(&cfg))?;
            Ok(Status::Success)
        }
        Command::Welfare(args) => {
            let cfg = args.game.resolve(None)?;
            let text = report::welfare_report(&cfg, args.output.precision);
            emit(args.output.out.as_deref(), &text)?;
            Ok(Status::Success)
        }
        Command::Config(args) => {
            let cfg = args.game.resolve(None)?;
            emit(args.output.out.as_deref(), &cfg.to_json())?;
            Ok(Status::Success)
        }
        Command::SweepDelta(args) => {
            let grid = sweep::delta_grid(&args.delta_min, &args.delta_max, args.steps)?;
            let cfg = args.game.resolve(Some(&args.delta_min))?;
            let rows = sweep::sweep(&cfg, &grid)?;
            sweep::write_sweep_csv(&rows, sink(args.output.out.as_deref())?)?;
            Ok(Status::Success)
        }
        Command::Simulate(args) => {
            let cfg = args.game.resolve(None)?;
            let spec: init::InitialSpec = args.s0.parse()?;
            let s0 = spec.realize(cfg.m(), args.seed)?;
            let max_stages = args
                .max_stages
                .unwrap_or_else(|| flpart_core::dynamics::default_max_stages(&cfg));
            let trajectory = simulate(&cfg, &s0, max_stages)?;
            let precision = (!args.exact_only).then_some(args.output.precision);
            trajectory_csv::write_trajectory_csv(
                &trajectory,
                precision,
                sink(args.output.out.as_deref())?,
            )?;
            if args.svg {
                let anchor = args
                    .output
                    .out
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--svg needs --out".into()))?;
                svg::write_trajectory_svgs(&trajectory, anchor)?;
            }
            Ok(if trajectory.terminal.kind() == TerminalKind::Unresolved {
                Status::Unresolved
            } else {
                Status::Success
            })
        }
        Command::Verify(args) => {
            let budget = OracleBudget {
                max_m: args.budget_m,
                override_flag: args.override_budget,
            };
            let (text, passed) = match args.batch {
                Some(count) => {
                    if !args.game.is_empty() {
                        return Err(CliError::Usage(
                            "--batch draws its own games; drop the config".into(),
                        ));
                    }
                    let batch = verify_batch(args.seed, count, budget)?;
                    (batch.to_string(), batch.passed())
                }
                None => {
                    let cfg = args.game.resolve(None)?;
                    let v = verify_config(&cfg, budget)?;
                    (v.to_string(), v.passed())
                }
            };
            emit(args.output.out.as_deref(), &text)?;
            Ok(if passed {
                Status::Success
            } else {
                Status::VerificationFailed
            })
        }
    }
}
