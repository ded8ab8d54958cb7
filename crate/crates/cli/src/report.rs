//! Plain-text reports for `equilibria` and `welfare`.

use std::fmt::Write as _;

use flpart_core::oracle::describe_config;
use flpart_core::rational::{format_decimal, format_exact};
use flpart_core::{enumerate_equilibria, welfare_maximizers, GameConfig, StrategyProfile};

fn join(ks: &[usize]) -> String {
    ks.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn span(profile: &StrategyProfile) -> String {
    let members = profile.participants();
    match (members.first(), members.last()) {
        (Some(first), Some(last)) if profile.is_consecutive() => format!("{first}-{last}"),
        _ => profile.participant_set_string(),
    }
}

pub fn equilibria_report(cfg: &GameConfig) -> String {
    let report = enumerate_equilibria(cfg);
    let mut out = String::new();
    let _ = writeln!(out, "config: {}", describe_config(cfg));
    let _ = writeln!(out, "regime: {}", cfg.regime());
    if let Some(ratio) = cfg.critical_ratio() {
        let _ = writeln!(out, "critical_ratio: {}", format_exact(&ratio));
    }
    let _ = writeln!(out, "admissible_k: {}", join(&report.admissible_k));
    let _ = writeln!(out, "assumption_odd_unique: {}", report.unique_odd);
    match report.k_star() {
        Some(k) => {
            let _ = writeln!(out, "k_star: {k}");
        }
        None => {
            let _ = writeln!(out, "k_star: none");
        }
    }
    let _ = writeln!(out, "equilibrium_count: {}", report.equilibrium_count());
    let _ = writeln!(out, "type1: {}", StrategyProfile::zeros(cfg.m()));
    let _ = writeln!(out, "type2_windows: {}", report.type2_profiles.len());
    for window in &report.type2_profiles {
        let _ = writeln!(out, "  {window} {}", span(window));
    }
    out
}

pub fn welfare_report(cfg: &GameConfig, precision: usize) -> String {
    let report = welfare_maximizers(cfg);
    let mut out = String::new();
    let _ = writeln!(out, "config: {}", describe_config(cfg));
    let _ = writeln!(
        out,
        "max_welfare: {} ({})",
        format_exact(&report.max_value),
        format_decimal(&report.max_value, precision)
    );
    let _ = writeln!(out, "optimal_sizes: {}", join(&report.optimal_sizes));
    let _ = writeln!(out, "maximizers: {}", report.maximizers.len());
    for profile in &report.maximizers {
        let _ = writeln!(out, "  {profile} {}", span(profile));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use flpart_core::rational::{integer, ratio};

    #[test]
    fn equilibria_for_reference_game() {
        let cfg = GameConfig::with_zero_origin(25, 100, integer(790), integer(1)).unwrap();
        let text = equilibria_report(&cfg);
        assert!(text.contains("admissible_k: 15\n"));
        assert!(text.contains("k_star: 15\n"));
        assert!(text.contains("equilibrium_count: 12\n"));
        assert!(text.contains("type2_windows: 11\n"));
        assert!(text.contains(" 11-25\n"));
    }

    #[test]
    fn equilibria_on_a_boundary() {
        let cfg = GameConfig::with_zero_origin(25, 100, integer(790), ratio(79, 40)).unwrap();
        let text = equilibria_report(&cfg);
        assert!(text.contains("admissible_k: 7,8\n"));
        assert!(text.contains("assumption_odd_unique: false\n"));
        assert!(text.contains("k_star: none\n"));
    }

    #[test]
    fn welfare_for_fixture() {
        let cfg = GameConfig::new(5, 100, integer(790), integer(4), integer(4)).unwrap();
        let text = welfare_report(&cfg, 3);
        assert!(text.contains("max_welfare: -317/10 (-31.700)\n"), "{text}");
        assert!(text.contains("maximizers: 3\n"));
    }
}
