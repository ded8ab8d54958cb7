//! Exact engine for the federated-learning participation game.
//!
//! `m` agents each decide whether to join a federated system. Joining costs
//! `a/(|Omega| n)` plus the distance between the agent's distribution mean and
//! the participants' average mean; staying out costs `a/n`. The crate covers
//! stage-game equilibria, welfare, the repeated game's myopic best-reply
//! dynamics, and exhaustive oracles that cross-check all of it on small games.
//!
//! All arithmetic is exact ([`Rational`]); equilibrium boundaries are
//! decided by exact comparisons.

pub mod config;
pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod oracle;
pub mod profile;
pub mod rational;
pub mod welfare;

pub use config::GameConfig;
pub use dynamics::{
    broadcast, myopic_step, simulate, BroadcastMessage, GrimTriggerState, StageRecord, Terminal,
    TerminalKind, Trajectory,
};
pub use equilibrium::{
    admissible_k, assumption_odd_unique, cost, enumerate_equilibria, is_nash, EquilibriumReport,
};
pub use error::{GameError, Result, SeparationRegime};
pub use oracle::OracleBudget;
pub use profile::{is_consecutive, StrategyProfile};
pub use rational::{parse_rational, Rational};
pub use welfare::{f_omega, social_welfare, welfare_maximizers, WelfareReport};
