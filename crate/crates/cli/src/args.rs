use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use flpart_core::{parse_rational, GameConfig, Rational};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "flpart",
    version,
    about = "Federated-learning participation game engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible participant counts and every stage equilibrium.
    Equilibria(ReportArgs),
    /// Welfare-maximizing profiles.
    Welfare(ReportArgs),
    /// Equilibrium participant counts over an even grid of delta values (CSV).
    SweepDelta(SweepArgs),
    /// Run the myopic best-reply dynamics and write the trajectory (CSV, optional SVG).
    Simulate(SimulateArgs),
    /// Check every closed form against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Write the resolved game as normalized JSON.
    Config(ReportArgs),
}

/// The stage game: a JSON file, individual flags, or a file with flag overrides.
#[derive(Debug, Clone, Default, Args)]
pub struct GameArgs {
    /// JSON config file.
    #[arg(value_name = "CONFIG")]
    pub config_path: Option<PathBuf>,
    #[arg(long = "config", value_name = "PATH", conflicts_with = "config_path")]
    pub config_flag: Option<PathBuf>,
    /// Number of agents.
    #[arg(long)]
    pub m: Option<usize>,
    /// Data points per agent.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_parser = exact, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = exact, allow_hyphen_values = true)]
    pub delta: Option<Rational>,
    #[arg(long, value_parser = exact, allow_hyphen_values = true)]
    pub mu1: Option<Rational>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Digits after the decimal point in decimal columns.
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_parser = exact, allow_hyphen_values = true)]
    pub delta_min: Rational,
    #[arg(long, value_parser = exact, allow_hyphen_values = true)]
    pub delta_max: Rational,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Initial profile: a bitstring such as 01001, `zeros`, `ones`,
    /// or `sparse[:SEED]` / `dense[:SEED]`.
    #[arg(long, value_name = "SPEC")]
    pub s0: String,
    /// Seed for `sparse` / `dense` when `--s0` carries none.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stage budget; defaults to m + k + 2 with k the largest admissible count.
    #[arg(long)]
    pub max_stages: Option<usize>,
    /// Also write one SVG bar chart per stage and an overview strip next to `--out`.
    #[arg(long, requires = "out")]
    pub svg: bool,
    /// Omit the decimal cost column.
    #[arg(long)]
    pub exact_only: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Verify this many seeded random games instead of one config.
    #[arg(long, value_name = "COUNT")]
    pub batch: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest m the exhaustive oracles will enumerate.
    #[arg(long, default_value_t = 12)]
    pub budget_m: usize,
    /// Lift the hard cap on m (up to 63 agents; may run for a very long time).
    #[arg(long)]
    pub override_budget: bool,
}

fn exact(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

impl GameArgs {
    pub fn config_file(&self) -> Option<&PathBuf> {
        self.config_path.as_ref().or(self.config_flag.as_ref())
    }

    pub fn is_empty(&self) -> bool {
        self.config_file().is_none()
            && self.m.is_none()
            && self.n.is_none()
            && self.a.is_none()
            && self.delta.is_none()
            && self.mu1.is_none()
    }

    /// Builds the game from the file (if any) with flags taking precedence.
    /// `fallback_delta` fills a missing delta.
    pub fn resolve(&self, fallback_delta: Option<&Rational>) -> Result<GameConfig, CliError> {
        let base = match self.config_file() {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                Some(GameConfig::from_json(&text)?)
            }
            None => None,
        };
        let missing =
            |name: &str| CliError::Usage(format!("missing --{name} (or give a config file)"));
        let m = self
            .m
            .or(base.as_ref().map(GameConfig::m))
            .ok_or_else(|| missing("m"))?;
        let n = self
            .n
            .or(base.as_ref().map(GameConfig::n))
            .ok_or_else(|| missing("n"))?;
        let a = self
            .a
            .clone()
            .or_else(|| base.as_ref().map(|c| c.a().clone()))
            .ok_or_else(|| missing("a"))?;
        let delta = self
            .delta
            .clone()
            .or_else(|| base.as_ref().map(|c| c.delta().clone()))
            .or_else(|| fallback_delta.cloned())
            .ok_or_else(|| missing("delta"))?;
        let mu1 = self
            .mu1
            .clone()
            .or_else(|| base.as_ref().map(|c| c.mu1().clone()))
            .unwrap_or_default();
        Ok(GameConfig::new(m, n, a, delta, mu1)?)
    }
}
