//! Stage-game costs and the pure Nash equilibrium characterization.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::config::GameConfig;
use crate::error::{GameError, Result};
use crate::profile::StrategyProfile;
use crate::rational::Rational;

fn rational(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `|mu_agent - mean(mu over a set)|` for a set with `count` members whose
/// zero-based indices sum to `index_sum`.
pub(crate) fn deviation_from_mean(
    cfg: &GameConfig,
    agent: usize,
    count: usize,
    index_sum: usize,
) -> Rational {
    (cfg.mean_ref(agent) - cfg.set_mean(count, index_sum)).abs()
}

/// Cost of an FL agent when the participant set has `count` members.
pub(crate) fn participant_cost(
    cfg: &GameConfig,
    agent: usize,
    count: usize,
    index_sum: usize,
) -> Rational {
    cfg.entry_cost(count) + deviation_from_mean(cfg, agent, count, index_sum)
}

/// Stage cost `c_i(s)` of agent `agent` (1-based).
///
/// Participants pay `a/(|Omega| n) + |mu_i - mean_Omega|`; everyone else pays `a/n`.
pub fn cost(cfg: &GameConfig, s: &StrategyProfile, agent: usize) -> Result<Rational> {
    s.check_len(cfg)?;
    cfg.check_agent(agent)?;
    if !s.participates(agent) {
        return Ok(cfg.opt_out_cost());
    }
    let (count, index_sum) = s
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold((0, 0), |(c, t), (i, _)| (c + 1, t + i));
    Ok(participant_cost(cfg, agent, count, index_sum))
}

/// Every agent's stage cost, in agent order.
pub fn costs(cfg: &GameConfig, s: &StrategyProfile) -> Result<Vec<Rational>> {
    s.check_len(cfg)?;
    let (count, index_sum) = s
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold((0, 0), |(c, t), (i, _)| (c + 1, t + i));
    if count == 0 {
        return Ok(vec![cfg.opt_out_cost(); cfg.m()]);
    }
    let set_mean = cfg.set_mean(count, index_sum);
    let entry = cfg.entry_cost(count);
    Ok((1..=cfg.m())
        .map(|i| {
            if s.participates(i) {
                entry + (cfg.mean_ref(i) - &set_mean).abs()
            } else {
                cfg.opt_out_cost()
            }
        })
        .collect())
}

/// No agent strictly lowers its cost by a unilateral flip.
pub fn is_nash(cfg: &GameConfig, s: &StrategyProfile) -> Result<bool> {
    s.check_len(cfg)?;
    for agent in 1..=cfg.m() {
        if cost(cfg, &s.flipped(agent), agent)? < cost(cfg, s, agent)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a `k`-consecutive participation is an equilibrium.
///
/// The widest-spread participant must not prefer leaving
/// (`delta <= 2a/(n k)`, vacuous for `k = 1`) and the nearest outsider must
/// not prefer joining (`delta >= 2a/(n (k+1))`, vacuous for `k = m`).
pub fn window_is_equilibrium(cfg: &GameConfig, k: usize) -> bool {
    if k == 0 || k > cfg.m() {
        return false;
    }
    let two_a_over_n = Rational::from_integer(BigInt::from(2)) * cfg.opt_out_cost();
    let members_stay = k == 1 || *cfg.delta() <= &two_a_over_n / rational(k);
    let outsiders_stay = k == cfg.m() || *cfg.delta() >= &two_a_over_n / rational(k + 1);
    members_stay && outsiders_stay
}

/// Participant counts `k` for which `k`-consecutive participations are equilibria.
///
/// Usually a single value; two adjacent values when `2a/(n delta)` is an integer.
pub fn admissible_k(cfg: &GameConfig) -> Vec<usize> {
    (1..=cfg.m())
        .filter(|&k| window_is_equilibrium(cfg, k))
        .collect()
}

/// The unique, odd type-2 participant count, if there is one.
pub fn unique_odd_k(cfg: &GameConfig) -> Option<usize> {
    match admissible_k(cfg).as_slice() {
        [k] if k % 2 == 1 => Some(*k),
        _ => None,
    }
}

pub fn assumption_odd_unique(cfg: &GameConfig) -> bool {
    unique_odd_k(cfg).is_some()
}

/// Like [`unique_odd_k`] but an error that names the separation regime.
pub fn require_unique_odd_k(cfg: &GameConfig) -> Result<usize> {
    unique_odd_k(cfg).ok_or_else(|| GameError::AssumptionViolated {
        admissible: admissible_k(cfg),
        regime: cfg.regime(),
    })
}

/// Every pure equilibrium of a stage game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub m: usize,
    /// The all-out profile is always an equilibrium.
    pub has_type1: bool,
    pub admissible_k: Vec<usize>,
    pub unique_odd: bool,
    /// For each admissible `k`, its `m - k + 1` windows.
    pub type2_profiles: Vec<StrategyProfile>,
}

impl EquilibriumReport {
    /// Type-1 profile followed by the type-2 windows.
    pub fn all_profiles(&self) -> Vec<StrategyProfile> {
        let mut all = Vec::with_capacity(self.type2_profiles.len() + 1);
        if self.has_type1 {
            all.push(StrategyProfile::zeros(self.m));
        }
        all.extend(self.type2_profiles.iter().cloned());
        all
    }

    pub fn equilibrium_count(&self) -> usize {
        self.type2_profiles.len() + usize::from(self.has_type1)
    }

    /// The unique odd `k*`, when it exists.
    pub fn k_star(&self) -> Option<usize> {
        if self.unique_odd {
            self.admissible_k.first().copied()
        } else {
            None
        }
    }
}

pub fn enumerate_equilibria(cfg: &GameConfig) -> EquilibriumReport {
    let admissible = admissible_k(cfg);
    let type2_profiles = admissible
        .iter()
        .flat_map(|&k| StrategyProfile::windows(cfg.m(), k))
        .collect();
    EquilibriumReport {
        m: cfg.m(),
        has_type1: true,
        unique_odd: matches!(admissible.as_slice(), [k] if k % 2 == 1),
        admissible_k: admissible,
        type2_profiles,
    }
}
