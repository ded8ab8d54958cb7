//! Equilibrium participant counts across a delta grid.

use std::io::Write;

use flpart_core::{admissible_k, rational::format_exact, GameConfig, Rational};
use num_traits::{Signed, Zero};

use crate::{csv_writer, CliError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub delta: Rational,
    pub k_values: Vec<usize>,
}

impl SweepRow {
    pub fn unique(&self) -> bool {
        self.k_values.len() == 1
    }

    pub fn odd(&self) -> bool {
        !self.k_values.is_empty() && self.k_values.iter().all(|k| k % 2 == 1)
    }
}

/// `steps` evenly spaced values from `min` to `max`, both included.
pub fn delta_grid(min: &Rational, max: &Rational, steps: usize) -> Result<Vec<Rational>, CliError> {
    if !min.is_positive() {
        return Err(CliError::Usage(format!(
            "delta-min must be positive, got {min}"
        )));
    }
    if min > max {
        return Err(CliError::Usage(format!(
            "delta-min {min} exceeds delta-max {max}"
        )));
    }
    match steps {
        0 => Err(CliError::Usage("steps must be at least 1".into())),
        1 if min != max => Err(CliError::Usage(
            "a single step needs delta-min equal to delta-max".into(),
        )),
        1 => Ok(vec![min.clone()]),
        _ => {
            let gap = (max - min) / Rational::from_integer((steps - 1).into());
            Ok((0..steps)
                .map(|j| min + &gap * Rational::from_integer(j.into()))
                .collect())
        }
    }
}

pub fn sweep(cfg: &GameConfig, grid: &[Rational]) -> Result<Vec<SweepRow>, CliError> {
    grid.iter()
        .map(|delta| {
            debug_assert!(!delta.is_zero());
            let game = cfg.with_delta(delta.clone())?;
            Ok(SweepRow {
                delta: delta.clone(),
                k_values: admissible_k(&game),
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    w.write_record(["delta", "k_values", "unique", "odd"])?;
    for row in rows {
        let ks: Vec<String> = row.k_values.iter().map(ToString::to_string).collect();
        w.write_record([
            format_exact(&row.delta),
            ks.join(";"),
            row.unique().to_string(),
            row.odd().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
