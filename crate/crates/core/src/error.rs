use thiserror::Error;

use crate::rational::ParseRationalError;

pub type Result<T, E = GameError> = std::result::Result<T, E>;

/// Which piece of the piecewise participant-count formula a separation falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparationRegime {
    /// `delta < 2a/(m n)`: everybody participates.
    Full,
    /// `2a/(m n) <= delta <= a/n`.
    Interior,
    /// `delta > a/n`: singleton coalitions.
    Singleton,
}

impl std::fmt::Display for SeparationRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeparationRegime::Full => write!(f, "k* = m branch (delta < 2a/(mn))"),
            SeparationRegime::Interior => write!(f, "interior branch (2a/(mn) <= delta <= a/n)"),
            SeparationRegime::Singleton => write!(f, "k* = 1 branch (delta > a/n)"),
        }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),

    #[error("agent {agent} is out of range 1..={m}")]
    AgentOutOfRange { agent: usize, m: usize },

    #[error("profile has {found} entries, game has {expected} agents")]
    LengthMismatch { expected: usize, found: usize },

    #[error("malformed strategy profile {0:?}")]
    MalformedProfile(String),

    #[error("participant count is not unique and odd (admissible k = {admissible:?}, {regime})")]
    AssumptionViolated {
        admissible: Vec<usize>,
        regime: SeparationRegime,
    },

    #[error("deviation thresholds are undefined for an empty participant set")]
    EmptyParticipantSet,

    #[error("profile {0} is not a type-2 equilibrium")]
    NotTypeTwoEquilibrium(String),

    #[error("exhaustive enumeration over m = {m} agents exceeds budget max_m = {max_m}")]
    BudgetExceeded { m: usize, max_m: usize },

    #[error(transparent)]
    Parse(#[from] ParseRationalError),

    #[error("config json: {0}")]
    Json(#[from] serde_json::Error),
}
