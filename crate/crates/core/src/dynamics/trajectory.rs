use crate::config::GameConfig;
use crate::equilibrium::{admissible_k, costs, require_unique_odd_k, unique_odd_k};
use crate::error::{GameError, Result};
use crate::profile::StrategyProfile;
use crate::rational::Rational;

use super::{broadcast, myopic_step, BroadcastMessage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub t: usize,
    pub profile: StrategyProfile,
    pub costs: Vec<Rational>,
    pub broadcast: BroadcastMessage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Terminal {
    /// Nobody participates, forever.
    Type1Fixed,
    /// A nonempty stage equilibrium repeats.
    Type2Fixed { equilibrium: StrategyProfile },
    /// Two profiles alternate, both in the neighborhood of `witness`.
    NeighborhoodCycle {
        states: [StrategyProfile; 2],
        witness: StrategyProfile,
    },
    /// Stage budget ran out, or the dynamics settled into a pattern the
    /// classifier does not recognize.
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TerminalKind {
    Type1Fixed,
    Type2Fixed,
    NeighborhoodCycle,
    Unresolved,
}

impl Terminal {
    pub fn kind(&self) -> TerminalKind {
        match self {
            Terminal::Type1Fixed => TerminalKind::Type1Fixed,
            Terminal::Type2Fixed { .. } => TerminalKind::Type2Fixed,
            Terminal::NeighborhoodCycle { .. } => TerminalKind::NeighborhoodCycle,
            Terminal::Unresolved => TerminalKind::Unresolved,
        }
    }
}

impl std::fmt::Display for TerminalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TerminalKind::Type1Fixed => "Type1Fixed",
            TerminalKind::Type2Fixed => "Type2Fixed",
            TerminalKind::NeighborhoodCycle => "NeighborhoodCycle",
            TerminalKind::Unresolved => "Unresolved",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// Stages from `t = 0`; a repeated state is not recorded twice.
    pub stages: Vec<StageRecord>,
    pub terminal: Terminal,
    /// First stage of the fixed point or cycle (stages run, if unresolved).
    pub stages_to_terminal: usize,
}

impl Trajectory {
    pub fn profiles(&self) -> impl Iterator<Item = &StrategyProfile> {
        self.stages.iter().map(|r| &r.profile)
    }

    /// First stage whose participant set is consecutive.
    pub fn first_consecutive_stage(&self) -> Option<usize> {
        self.stages
            .iter()
            .find(|r| r.profile.is_consecutive())
            .map(|r| r.t)
    }
}

/// `m + k* + 2`, with the largest admissible count standing in for `k*`
/// when it is not unique.
pub fn default_max_stages(cfg: &GameConfig) -> usize {
    let k = admissible_k(cfg).into_iter().max().unwrap_or(cfg.m());
    cfg.m() + k + 2
}

/// Every type-2 equilibrium `s*` with `s` in its neighborhood, lowest first agent first.
///
/// The neighborhood of `s*` is `s*` itself plus the `(k* +- 1)`-consecutive
/// participations one flip away from it.
pub fn neighborhood_witnesses(
    cfg: &GameConfig,
    s: &StrategyProfile,
) -> Result<Vec<StrategyProfile>> {
    s.check_len(cfg)?;
    Ok(witnesses_for(cfg.m(), require_unique_odd_k(cfg)?, s))
}

fn witnesses_for(m: usize, k_star: usize, s: &StrategyProfile) -> Vec<StrategyProfile> {
    let size = s.participant_count();
    let near = s.is_consecutive() && (size + 1 == k_star || size == k_star + 1);
    StrategyProfile::windows(m, k_star)
        .filter(|w| w == s || (near && w.hamming(s) == 1))
        .collect()
}

pub fn neighborhood_witness(
    cfg: &GameConfig,
    s: &StrategyProfile,
) -> Result<Option<StrategyProfile>> {
    Ok(neighborhood_witnesses(cfg, s)?.into_iter().next())
}

fn common_witness(
    m: usize,
    k_star: usize,
    a: &StrategyProfile,
    b: &StrategyProfile,
) -> Option<StrategyProfile> {
    let right = witnesses_for(m, k_star, b);
    witnesses_for(m, k_star, a)
        .into_iter()
        .find(|w| right.contains(w))
}

fn record(cfg: &GameConfig, t: usize, profile: StrategyProfile) -> Result<StageRecord> {
    Ok(StageRecord {
        t,
        costs: costs(cfg, &profile)?,
        broadcast: broadcast(cfg, &profile)?,
        profile,
    })
}

/// Profiles visited by the myopic dynamics and how they ended, without
/// per-stage cost records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsOutcome {
    pub profiles: Vec<StrategyProfile>,
    pub terminal: Terminal,
    pub stages_to_terminal: usize,
}

impl DynamicsOutcome {
    pub fn first_consecutive_stage(&self) -> Option<usize> {
        self.profiles
            .iter()
            .position(StrategyProfile::is_consecutive)
    }
}

/// Iterates the myopic step from `s0` for at most `max_stages` updates.
///
/// Stops at the first fixed point or period-2 alternation. A fixed point is
/// type 1 when empty and type 2 otherwise; an alternation is a neighborhood
/// cycle when both states share a witness equilibrium.
pub fn run_dynamics(
    cfg: &GameConfig,
    s0: &StrategyProfile,
    max_stages: usize,
) -> Result<DynamicsOutcome> {
    run_with_step(cfg, s0, max_stages, unique_odd_k(cfg), |s| {
        myopic_step(cfg, s)
    })
}

/// [`run_dynamics`] with the stage map supplied by the caller, e.g. a
/// precomputed table of [`myopic_step`]. Cycles are only classified when
/// `k_star` is known.
pub(crate) fn run_with_step(
    cfg: &GameConfig,
    s0: &StrategyProfile,
    max_stages: usize,
    k_star: Option<usize>,
    mut step: impl FnMut(&StrategyProfile) -> Result<StrategyProfile>,
) -> Result<DynamicsOutcome> {
    s0.check_len(cfg)?;
    if max_stages == 0 {
        return Err(GameError::InvalidConfig(
            "max_stages must be at least 1".into(),
        ));
    }
    let mut profiles = vec![s0.clone()];
    for t in 1..=max_stages {
        let next = step(&profiles[t - 1])?;
        if next == profiles[t - 1] {
            let terminal = if next.is_all_out() {
                Terminal::Type1Fixed
            } else {
                Terminal::Type2Fixed { equilibrium: next }
            };
            return Ok(DynamicsOutcome {
                profiles,
                terminal,
                stages_to_terminal: t - 1,
            });
        }
        if t >= 2 && next == profiles[t - 2] {
            let previous = &profiles[t - 1];
            let witness = k_star.and_then(|k| common_witness(cfg.m(), k, &next, previous));
            let terminal = match witness {
                Some(witness) => Terminal::NeighborhoodCycle {
                    states: [next, previous.clone()],
                    witness,
                },
                None => Terminal::Unresolved,
            };
            return Ok(DynamicsOutcome {
                profiles,
                terminal,
                stages_to_terminal: t - 2,
            });
        }
        profiles.push(next);
    }
    Ok(DynamicsOutcome {
        profiles,
        terminal: Terminal::Unresolved,
        stages_to_terminal: max_stages,
    })
}

/// [`run_dynamics`] plus the exact costs and broadcast of every stage.
pub fn simulate(cfg: &GameConfig, s0: &StrategyProfile, max_stages: usize) -> Result<Trajectory> {
    let outcome = run_dynamics(cfg, s0, max_stages)?;
    let stages = outcome
        .profiles
        .into_iter()
        .enumerate()
        .map(|(t, profile)| record(cfg, t, profile))
        .collect::<Result<_>>()?;
    Ok(Trajectory {
        stages,
        terminal: outcome.terminal,
        stages_to_terminal: outcome.stages_to_terminal,
    })
}
