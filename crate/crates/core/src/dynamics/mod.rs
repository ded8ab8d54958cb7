//! The repeated game under the myopic best-reply strategy.
//!
//! Each stage the server broadcasts the participant count and mean of the
//! previous stage. Every agent evaluates the cost of flipping its own action
//! against that broadcast and flips only on a strict improvement; all agents
//! move simultaneously.

mod grim;
mod trajectory;

pub(crate) use trajectory::run_with_step;

pub use grim::{one_stage_deviation_check, one_stage_deviation_holds, GrimPhase, GrimTriggerState};
pub use trajectory::{
    default_max_stages, neighborhood_witness, neighborhood_witnesses, run_dynamics, simulate,
    DynamicsOutcome, StageRecord, Terminal, TerminalKind, Trajectory,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::config::GameConfig;
use crate::error::{GameError, Result};
use crate::profile::StrategyProfile;
use crate::rational::Rational;

/// What the server tells every agent about the previous stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroadcastMessage {
    pub omega_size: usize,
    /// Mean of participants' means; zero when nobody participated.
    pub mu_bar: Rational,
}

pub fn broadcast(cfg: &GameConfig, s: &StrategyProfile) -> Result<BroadcastMessage> {
    s.check_len(cfg)?;
    let (count, index_sum) = s
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold((0, 0), |(c, t), (i, _)| (c + 1, t + i));
    if count == 0 {
        return Ok(BroadcastMessage {
            omega_size: 0,
            mu_bar: Rational::zero(),
        });
    }
    Ok(BroadcastMessage {
        omega_size: count,
        mu_bar: cfg.set_mean(count, index_sum),
    })
}

/// `(join_bound, leave_bound)`: an outsider joins iff `|mu_i - mu_bar| < join_bound`,
/// a participant leaves iff `|mu_i - mu_bar| > leave_bound`.
pub fn thresholds(cfg: &GameConfig, msg: &BroadcastMessage) -> Result<(Rational, Rational)> {
    if msg.omega_size == 0 {
        return Err(GameError::EmptyParticipantSet);
    }
    let join = cfg.opt_out_cost();
    let size = Rational::from_integer(BigInt::from(msg.omega_size));
    let leave = &join * (Rational::one() - size.recip());
    Ok((join, leave))
}

/// Cost an agent would have paid last stage had it played the other action,
/// reconstructed from the broadcast alone.
pub fn hypothetical_cost(
    cfg: &GameConfig,
    msg: &BroadcastMessage,
    agent: usize,
    was_participating: bool,
) -> Result<Rational> {
    if was_participating {
        return Ok(cfg.opt_out_cost());
    }
    cfg.check_agent(agent)?;
    Ok(JoinTerms::new(msg).cost(cfg, agent, msg.omega_size))
}

/// Per-stage parts of an outsider's join cost.
struct JoinTerms {
    /// `|Omega| mu_bar`
    weighted_mean: Rational,
    /// `1 / (|Omega| + 1)`
    share: Rational,
}

impl JoinTerms {
    fn new(msg: &BroadcastMessage) -> Self {
        let size = Rational::from_integer(BigInt::from(msg.omega_size));
        Self {
            weighted_mean: &size * &msg.mu_bar,
            share: (size + Rational::one()).recip(),
        }
    }

    fn cost(&self, cfg: &GameConfig, agent: usize, omega_size: usize) -> Rational {
        let mu_i = cfg.mean_ref(agent);
        let new_mean = (&self.weighted_mean + mu_i) * &self.share;
        cfg.entry_cost(omega_size + 1) + (mu_i - new_mean).abs()
    }
}

/// One simultaneous stage of the myopic strategy. Ties keep the previous action.
pub fn myopic_step(cfg: &GameConfig, prev: &StrategyProfile) -> Result<StrategyProfile> {
    let msg = broadcast(cfg, prev)?;
    let join = JoinTerms::new(&msg);
    let out = cfg.opt_out_cost();
    let next = (1..=cfg.m())
        .map(|agent| {
            if prev.participates(agent) {
                // realized cost: the set mean is exactly mu_bar
                let realized =
                    cfg.entry_cost(msg.omega_size) + (cfg.mean_ref(agent) - &msg.mu_bar).abs();
                out >= realized
            } else {
                join.cost(cfg, agent, msg.omega_size) < out
            }
        })
        .collect();
    Ok(StrategyProfile::from_bits(next))
}

/// The same stage expressed through the two deviation thresholds. Only
/// defined when somebody participated in the previous stage.
pub fn threshold_step(cfg: &GameConfig, prev: &StrategyProfile) -> Result<StrategyProfile> {
    let msg = broadcast(cfg, prev)?;
    let (join, leave) = thresholds(cfg, &msg)?;
    let bits = (1..=cfg.m())
        .map(|agent| {
            let gap = (cfg.mean_ref(agent) - &msg.mu_bar).abs();
            if prev.participates(agent) {
                gap <= leave
            } else {
                gap < join
            }
        })
        .collect();
    Ok(StrategyProfile::from_bits(bits))
}
