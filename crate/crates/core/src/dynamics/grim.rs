use crate::config::GameConfig;
use crate::equilibrium::{cost, is_nash, require_unique_odd_k};
use crate::error::{GameError, Result};
use crate::profile::StrategyProfile;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrimPhase {
    Cooperate(StrategyProfile),
    Punish,
}

/// Grim trigger: play a type-2 equilibrium until anyone is seen deviating,
/// then play the all-out equilibrium forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrimTriggerState {
    phase: GrimPhase,
    deviation_observed: bool,
    m: usize,
}

impl GrimTriggerState {
    pub fn new(cfg: &GameConfig, target: StrategyProfile) -> Result<Self> {
        check_target(cfg, &target)?;
        Ok(Self {
            m: target.len(),
            phase: GrimPhase::Cooperate(target),
            deviation_observed: false,
        })
    }

    pub fn phase(&self) -> &GrimPhase {
        &self.phase
    }

    pub fn deviation_observed(&self) -> bool {
        self.deviation_observed
    }

    pub fn prescription(&self) -> StrategyProfile {
        match &self.phase {
            GrimPhase::Cooperate(target) => target.clone(),
            GrimPhase::Punish => StrategyProfile::zeros(self.m),
        }
    }

    /// Records the realized stage profile. Any departure from the
    /// prescription switches to punishment permanently.
    pub fn observe(&mut self, realized: &StrategyProfile) {
        if *realized != self.prescription() {
            self.deviation_observed = true;
            self.phase = GrimPhase::Punish;
        }
    }
}

fn check_target(cfg: &GameConfig, target: &StrategyProfile) -> Result<()> {
    target.check_len(cfg)?;
    if target.is_all_out() || !is_nash(cfg, target)? {
        return Err(GameError::NotTypeTwoEquilibrium(target.to_string()));
    }
    Ok(())
}

fn no_profitable_flip(cfg: &GameConfig, s: &StrategyProfile) -> Result<bool> {
    for agent in 1..=cfg.m() {
        if cost(cfg, &s.flipped(agent), agent)? < cost(cfg, s, agent)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One-stage deviation test without preconditions: in both phases (the
/// target and the all-out profile) no agent strictly gains by a unilateral flip.
pub fn one_stage_deviation_holds(cfg: &GameConfig, target: &StrategyProfile) -> Result<bool> {
    target.check_len(cfg)?;
    Ok(no_profitable_flip(cfg, target)?
        && no_profitable_flip(cfg, &StrategyProfile::zeros(cfg.m()))?)
}

/// [`one_stage_deviation_holds`] for a valid type-2 target of a game with a
/// unique odd participant count.
pub fn one_stage_deviation_check(cfg: &GameConfig, target: &StrategyProfile) -> Result<bool> {
    require_unique_odd_k(cfg)?;
    check_target(cfg, target)?;
    one_stage_deviation_holds(cfg, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn cfg5() -> GameConfig {
        GameConfig::with_zero_origin(5, 100, integer(790), integer(4)).unwrap()
    }

    fn profile(s: &str) -> StrategyProfile {
        s.parse().unwrap()
    }

    #[test]
    fn prescriptions() {
        let mut state = GrimTriggerState::new(&cfg5(), profile("11100")).unwrap();
        assert_eq!(state.prescription(), profile("11100"));
        state.observe(&profile("11100"));
        assert_eq!(state.phase(), &GrimPhase::Cooperate(profile("11100")));
        state.observe(&profile("11110"));
        assert!(state.deviation_observed());
        assert_eq!(state.prescription(), profile("00000"));
        // punishment is absorbing, even if play returns to the target
        state.observe(&profile("11100"));
        assert_eq!(state.phase(), &GrimPhase::Punish);
        state.observe(&profile("00000"));
        assert_eq!(state.prescription(), profile("00000"));
    }

    #[test]
    fn rejects_non_equilibrium_targets() {
        assert!(GrimTriggerState::new(&cfg5(), profile("11110")).is_err());
        assert!(GrimTriggerState::new(&cfg5(), profile("00000")).is_err());
        assert!(one_stage_deviation_check(&cfg5(), &profile("11110")).is_err());
    }

    #[test]
    fn deviation_examples() {
        assert!(one_stage_deviation_check(&cfg5(), &profile("01110")).unwrap());
        assert!(!one_stage_deviation_holds(&cfg5(), &profile("11110")).unwrap());
        let lone = GameConfig::with_zero_origin(1, 100, integer(790), integer(4)).unwrap();
        assert!(one_stage_deviation_check(&lone, &profile("1")).unwrap());
    }
}
