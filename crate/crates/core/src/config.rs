use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GameError, Result, SeparationRegime};
use crate::rational::{format_exact, parse_rational, Rational};

/// One stage game: `m` agents holding `n` points each, problem constant `a`,
/// and evenly spaced distribution means `mu1, mu1 + delta, ...`.
///
/// Agents are numbered `1..=m`, ordered by mean.
#[derive(Debug, Clone)]
pub struct GameConfig {
    m: usize,
    n: u64,
    a: Rational,
    delta: Rational,
    mu1: Rational,
    // Derived from the fields above.
    means: Vec<Rational>,
    /// `a/(k n)` for `k = 0..=m + 1`; entry 0 is unused.
    entry_costs: Vec<Rational>,
}

impl PartialEq for GameConfig {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.a == other.a
            && self.delta == other.delta
            && self.mu1 == other.mu1
    }
}

impl Eq for GameConfig {}

impl GameConfig {
    pub fn new(m: usize, n: u64, a: Rational, delta: Rational, mu1: Rational) -> Result<Self> {
        if m == 0 {
            return Err(GameError::InvalidConfig("m must be at least 1".into()));
        }
        if n == 0 {
            return Err(GameError::InvalidConfig("n must be at least 1".into()));
        }
        if !a.is_positive() {
            return Err(GameError::InvalidConfig(format!(
                "a must be positive, got {a}"
            )));
        }
        if delta.is_negative() {
            return Err(GameError::InvalidConfig(format!(
                "delta must be nonnegative, got {delta}"
            )));
        }
        let means = (0..m)
            .map(|i| &mu1 + &delta * Rational::from_integer(BigInt::from(i)))
            .collect();
        let n_rat = Rational::from_integer(BigInt::from(n));
        let entry_costs = (0..=m + 1)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    &a / (Rational::from_integer(BigInt::from(k)) * &n_rat)
                }
            })
            .collect();
        Ok(Self {
            m,
            n,
            a,
            delta,
            mu1,
            means,
            entry_costs,
        })
    }

    /// Same as [`GameConfig::new`] with `mu1 = 0`.
    pub fn with_zero_origin(m: usize, n: u64, a: Rational, delta: Rational) -> Result<Self> {
        Self::new(m, n, a, delta, Rational::zero())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn mu1(&self) -> &Rational {
        &self.mu1
    }

    pub fn with_delta(&self, delta: Rational) -> Result<Self> {
        Self::new(self.m, self.n, self.a.clone(), delta, self.mu1.clone())
    }

    pub fn with_mu1(&self, mu1: Rational) -> Self {
        Self::new(self.m, self.n, self.a.clone(), self.delta.clone(), mu1)
            .expect("only the origin changed")
    }

    pub(crate) fn n_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.n))
    }

    /// `a/n`: the cost of training locally, and the join threshold.
    pub fn opt_out_cost(&self) -> Rational {
        self.entry_costs[1].clone()
    }

    /// `a/(k n)`: the sample-size part of a participant's cost when `k` agents participate.
    pub(crate) fn entry_cost(&self, k: usize) -> &Rational {
        &self.entry_costs[k]
    }

    /// `2a/(n delta)`, the unconstrained welfare-optimal participant count.
    /// `None` when `delta = 0`.
    pub fn critical_ratio(&self) -> Option<Rational> {
        if self.delta.is_zero() {
            None
        } else {
            Some(
                Rational::from_integer(BigInt::from(2)) * &self.a
                    / (self.n_rational() * &self.delta),
            )
        }
    }

    pub fn regime(&self) -> SeparationRegime {
        let m = Rational::from_integer(BigInt::from(self.m));
        let full_bound =
            Rational::from_integer(BigInt::from(2)) * &self.a / (m * self.n_rational());
        if self.delta < full_bound {
            SeparationRegime::Full
        } else if self.delta > self.opt_out_cost() {
            SeparationRegime::Singleton
        } else {
            SeparationRegime::Interior
        }
    }

    pub fn check_agent(&self, agent: usize) -> Result<()> {
        if agent == 0 || agent > self.m {
            Err(GameError::AgentOutOfRange { agent, m: self.m })
        } else {
            Ok(())
        }
    }

    /// Mean of agent `agent` (1-based): `mu1 + (agent - 1) delta`.
    pub fn mean(&self, agent: usize) -> Result<Rational> {
        self.check_agent(agent)?;
        Ok(self.mean_unchecked(agent))
    }

    pub(crate) fn mean_ref(&self, agent: usize) -> &Rational {
        &self.means[agent - 1]
    }

    pub(crate) fn mean_unchecked(&self, agent: usize) -> Rational {
        self.means[agent - 1].clone()
    }

    /// Average mean of a set with `count` members whose zero-based indices
    /// sum to `index_sum`.
    pub(crate) fn set_mean(&self, count: usize, index_sum: usize) -> Rational {
        &self.mu1 + &self.delta * Rational::new(BigInt::from(index_sum), BigInt::from(count))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawConfig::from(self)).expect("config serializes")
    }
}

/// Rationals travel as strings so no JSON float ever touches them.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ExactValue(Rational);

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_exact(&self.0))
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer).map_err(|_| {
            serde::de::Error::custom("expected a decimal or p/q string (or an integer)")
        })? {
            Repr::Text(s) => parse_rational(&s)
                .map(ExactValue)
                .map_err(serde::de::Error::custom),
            Repr::Int(v) => Ok(ExactValue(Rational::from_integer(BigInt::from(v)))),
        }
    }
}

fn zero_value() -> ExactValue {
    ExactValue(Rational::zero())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    m: usize,
    n: u64,
    a: ExactValue,
    delta: ExactValue,
    #[serde(default = "zero_value")]
    mu1: ExactValue,
}

impl TryFrom<RawConfig> for GameConfig {
    type Error = GameError;

    fn try_from(raw: RawConfig) -> Result<Self> {
        GameConfig::new(raw.m, raw.n, raw.a.0, raw.delta.0, raw.mu1.0)
    }
}

impl From<&GameConfig> for RawConfig {
    fn from(cfg: &GameConfig) -> Self {
        RawConfig {
            m: cfg.m,
            n: cfg.n,
            a: ExactValue(cfg.a.clone()),
            delta: ExactValue(cfg.delta.clone()),
            mu1: ExactValue(cfg.mu1.clone()),
        }
    }
}
