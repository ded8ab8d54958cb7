//! Static SVG bar charts of participation, one per stage plus an overview strip.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use flpart_core::{StrategyProfile, Trajectory};

use crate::CliError;

const MARGIN: usize = 24;
const SLOT: usize = 20;
const BAR_HEIGHT: usize = 80;
const STRIP_CELL: usize = 12;
const IN_FILL: &str = "#3b6ea5";
const OUT_FILL: &str = "#e4e4e4";

fn open(out: &mut String, width: usize, height: usize) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
}

fn label(out: &mut String, x: usize, y: usize, size: usize, anchor: &str, text: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{x}" y="{y}" font-family="monospace" font-size="{size}" text-anchor="{anchor}">{text}</text>"#
    );
}

/// Agents on the x axis; participants get a full-height bar.
pub fn stage_svg(profile: &StrategyProfile, stage: usize) -> String {
    let m = profile.len();
    let width = 2 * MARGIN + m * SLOT;
    let top = MARGIN + 8;
    let base = top + BAR_HEIGHT;
    let height = base + MARGIN;
    let mut out = String::new();
    open(&mut out, width, height);
    label(
        &mut out,
        MARGIN,
        MARGIN - 6,
        12,
        "start",
        &format!(
            "stage {stage}: {} participants",
            profile.participant_count()
        ),
    );
    for agent in 1..=m {
        let x = MARGIN + (agent - 1) * SLOT;
        if profile.participates(agent) {
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{top}" width="{}" height="{BAR_HEIGHT}" fill="{IN_FILL}"/>"#,
                x + 2,
                SLOT - 4
            );
        }
        label(
            &mut out,
            x + SLOT / 2,
            base + 14,
            9,
            "middle",
            &agent.to_string(),
        );
    }
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="black" stroke-width="1"/>"#,
        MARGIN + m * SLOT
    );
    out.push_str("</svg>\n");
    out
}

/// One row per stage, one cell per agent.
pub fn overview_svg<'a>(profiles: impl IntoIterator<Item = &'a StrategyProfile>) -> String {
    let profiles: Vec<&StrategyProfile> = profiles.into_iter().collect();
    let m = profiles.first().map_or(0, |p| p.len());
    let width = 2 * MARGIN + m * STRIP_CELL + MARGIN;
    let height = 2 * MARGIN + profiles.len() * STRIP_CELL;
    let mut out = String::new();
    open(&mut out, width, height);
    label(&mut out, MARGIN, MARGIN - 8, 12, "start", "stage / agent");
    for (t, profile) in profiles.iter().enumerate() {
        let y = MARGIN + t * STRIP_CELL;
        label(
            &mut out,
            MARGIN + 2 * MARGIN / 3,
            y + STRIP_CELL - 2,
            9,
            "end",
            &t.to_string(),
        );
        for agent in 1..=m {
            let fill = if profile.participates(agent) {
                IN_FILL
            } else {
                OUT_FILL
            };
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
                2 * MARGIN + (agent - 1) * STRIP_CELL + 1,
                y + 1,
                STRIP_CELL - 2,
                STRIP_CELL - 2
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Writes `<stem>_stage_NN.svg` for every stage and `<stem>_overview.svg`
/// beside `anchor`, returning the paths written.
pub fn write_trajectory_svgs(
    trajectory: &Trajectory,
    anchor: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    let stem = anchor
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trajectory".into());
    let dir = anchor.parent().unwrap_or_else(|| Path::new(""));
    let mut written = Vec::new();
    for stage in &trajectory.stages {
        let path = dir.join(format!("{stem}_stage_{:02}.svg", stage.t));
        std::fs::write(&path, stage_svg(&stage.profile, stage.t))?;
        written.push(path);
    }
    let path = dir.join(format!("{stem}_overview.svg"));
    std::fs::write(&path, overview_svg(trajectory.profiles()))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_chart_has_one_bar_per_participant() {
        let s: StrategyProfile = "01101".parse().unwrap();
        let svg = stage_svg(&s, 3);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches(IN_FILL).count(), 3);
        assert!(svg.contains("stage 3: 3 participants"));
    }

    #[test]
    fn overview_has_a_cell_per_agent_and_stage() {
        let a: StrategyProfile = "0110".parse().unwrap();
        let b: StrategyProfile = "1111".parse().unwrap();
        let svg = overview_svg([&a, &b]);
        assert_eq!(svg.matches(IN_FILL).count(), 6);
        assert_eq!(svg.matches(OUT_FILL).count(), 2);
    }
}
