use std::fmt;
use std::str::FromStr;

use crate::config::GameConfig;
use crate::error::{GameError, Result};

/// Binary participation vector. Entry for agent `i` (1-based) is `s_i`.
///
/// The participant set is always derived from the bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    bits: Vec<bool>,
}

impl StrategyProfile {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            bits: vec![false; m],
        }
    }

    pub fn ones(m: usize) -> Self {
        Self {
            bits: vec![true; m],
        }
    }

    /// Bit `i` of `mask` is the action of agent `i + 1`.
    pub fn from_mask(m: usize, mask: u64) -> Self {
        debug_assert!(m <= 64);
        Self {
            bits: (0..m).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| if b { acc | 1 << i } else { acc })
    }

    pub fn from_participants(m: usize, participants: &[usize]) -> Result<Self> {
        let mut bits = vec![false; m];
        for &agent in participants {
            if agent == 0 || agent > m {
                return Err(GameError::AgentOutOfRange { agent, m });
            }
            bits[agent - 1] = true;
        }
        Ok(Self { bits })
    }

    /// The `size`-consecutive participation starting at agent `first`.
    pub fn window(m: usize, first: usize, size: usize) -> Self {
        assert!(first >= 1 && first + size <= m + 1, "window out of range");
        Self {
            bits: (1..=m).map(|i| i >= first && i < first + size).collect(),
        }
    }

    /// All `m - size + 1` windows of the given size, lowest first agent first.
    pub fn windows(m: usize, size: usize) -> impl Iterator<Item = Self> {
        let count = if size == 0 || size > m {
            0
        } else {
            m - size + 1
        };
        (1..=count).map(move |first| Self::window(m, first, size))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Action of agent `agent` (1-based). Panics when out of range.
    pub fn participates(&self, agent: usize) -> bool {
        self.bits[agent - 1]
    }

    pub fn participants(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i + 1))
            .collect()
    }

    pub fn participant_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_all_out(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn flipped(&self, agent: usize) -> Self {
        let mut bits = self.bits.clone();
        bits[agent - 1] = !bits[agent - 1];
        Self { bits }
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// True when the participant set is empty, a singleton, or a contiguous run.
    pub fn is_consecutive(&self) -> bool {
        let first = self.bits.iter().position(|&b| b);
        let last = self.bits.iter().rposition(|&b| b);
        match (first, last) {
            (Some(lo), Some(hi)) => self.bits[lo..=hi].iter().all(|&b| b),
            _ => true,
        }
    }

    pub fn check_len(&self, cfg: &GameConfig) -> Result<()> {
        if self.bits.len() == cfg.m() {
            Ok(())
        } else {
            Err(GameError::LengthMismatch {
                expected: cfg.m(),
                found: self.bits.len(),
            })
        }
    }

    /// Participants rendered as `{2,3,4}`.
    pub fn participant_set_string(&self) -> String {
        let inner: Vec<String> = self.participants().iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for StrategyProfile {
    type Err = GameError;

    /// Parses a bitstring such as `01001`; the first character is agent 1.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GameError::MalformedProfile(s.to_string()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(GameError::MalformedProfile(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

/// Whether `omega` (1-based agent numbers, any order) is a consecutive set.
/// The empty set counts, so the all-out profile is the 0-consecutive participation.
pub fn is_consecutive(cfg: &GameConfig, omega: &[usize]) -> Result<bool> {
    for &agent in omega {
        cfg.check_agent(agent)?;
    }
    Ok(StrategyProfile::from_participants(cfg.m(), omega)?.is_consecutive())
}
