//! Stage-by-stage trajectory CSV.

use std::io::Write;

use flpart_core::rational::format_decimal;
use flpart_core::{Terminal, Trajectory};

use crate::{csv_writer, CliError};

pub const HEADER: [&str; 8] = [
    "stage",
    "agent",
    "strategy",
    "cost_num",
    "cost_den",
    "omega_size",
    "mu_bar_num",
    "mu_bar_den",
];

pub const DECIMAL_COLUMN: &str = "cost";

/// One row per (stage, agent); `precision` adds a rounded decimal cost column.
/// The last line is a `#` comment with the terminal class.
pub fn write_trajectory_csv<W: Write>(
    trajectory: &Trajectory,
    precision: Option<usize>,
    out: W,
) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    let mut header: Vec<&str> = HEADER.to_vec();
    if precision.is_some() {
        header.push(DECIMAL_COLUMN);
    }
    w.write_record(&header)?;
    for stage in &trajectory.stages {
        let mu_bar = &stage.broadcast.mu_bar;
        for (i, cost) in stage.costs.iter().enumerate() {
            let mut row = vec![
                stage.t.to_string(),
                (i + 1).to_string(),
                u8::from(stage.profile.participates(i + 1)).to_string(),
                cost.numer().to_string(),
                cost.denom().to_string(),
                stage.broadcast.omega_size.to_string(),
                mu_bar.numer().to_string(),
                mu_bar.denom().to_string(),
            ];
            if let Some(digits) = precision {
                row.push(format_decimal(cost, digits));
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    let mut out = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    writeln!(out, "{}", terminal_line(trajectory))?;
    out.flush()?;
    Ok(())
}

pub fn terminal_line(trajectory: &Trajectory) -> String {
    let detail = match &trajectory.terminal {
        Terminal::Type2Fixed { equilibrium } => format!(" equilibrium={equilibrium}"),
        Terminal::NeighborhoodCycle { states, witness } => {
            format!(" cycle={}|{} witness={witness}", states[0], states[1])
        }
        Terminal::Type1Fixed | Terminal::Unresolved => String::new(),
    };
    format!(
        "# terminal={} stages_to_terminal={}{detail}",
        trajectory.terminal.kind(),
        trajectory.stages_to_terminal
    )
}
