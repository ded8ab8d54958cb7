//! Initial-profile specs for `simulate`.

use std::str::FromStr;

use flpart_core::StrategyProfile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Each agent starts in with probability `numerator / 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Sparse,
    Dense,
}

impl Density {
    fn numerator(self) -> u32 {
        match self {
            Density::Sparse => 1,
            Density::Dense => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialSpec {
    Explicit(StrategyProfile),
    Zeros,
    Ones,
    Random { density: Density, seed: Option<u64> },
}

impl FromStr for InitialSpec {
    type Err = CliError;

    fn from_str(spec: &str) -> Result<Self, CliError> {
        let (kind, seed) = match spec.split_once(':') {
            Some((kind, seed)) => {
                let seed = seed.parse::<u64>().map_err(|_| {
                    CliError::Usage(format!("bad seed in initial profile {spec:?}"))
                })?;
                (kind, Some(seed))
            }
            None => (spec, None),
        };
        match (kind, seed) {
            ("sparse", _) => Ok(InitialSpec::Random {
                density: Density::Sparse,
                seed,
            }),
            ("dense", _) => Ok(InitialSpec::Random {
                density: Density::Dense,
                seed,
            }),
            ("zeros", None) => Ok(InitialSpec::Zeros),
            ("ones", None) => Ok(InitialSpec::Ones),
            (bits, None) => bits
                .parse::<StrategyProfile>()
                .map(InitialSpec::Explicit)
                .map_err(CliError::from),
            _ => Err(CliError::Usage(format!("unknown initial profile {spec:?}"))),
        }
    }
}

impl InitialSpec {
    /// The profile for `m` agents; `default_seed` applies to random specs without one.
    pub fn realize(&self, m: usize, default_seed: u64) -> Result<StrategyProfile, CliError> {
        match self {
            InitialSpec::Explicit(s) if s.len() == m => Ok(s.clone()),
            InitialSpec::Explicit(s) => Err(CliError::Usage(format!(
                "initial profile {s} has {} agents, the game has {m}",
                s.len()
            ))),
            InitialSpec::Zeros => Ok(StrategyProfile::zeros(m)),
            InitialSpec::Ones => Ok(StrategyProfile::ones(m)),
            InitialSpec::Random { density, seed } => {
                Ok(random_profile(m, *density, seed.unwrap_or(default_seed)))
            }
        }
    }
}

pub fn random_profile(m: usize, density: Density, seed: u64) -> StrategyProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StrategyProfile::from_bits(
        (0..m)
            .map(|_| rng.gen_ratio(density.numerator(), 5))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("zeros".parse::<InitialSpec>().unwrap(), InitialSpec::Zeros);
        assert_eq!(
            "dense:9".parse::<InitialSpec>().unwrap(),
            InitialSpec::Random {
                density: Density::Dense,
                seed: Some(9)
            }
        );
        assert_eq!(
            "sparse".parse::<InitialSpec>().unwrap(),
            InitialSpec::Random {
                density: Density::Sparse,
                seed: None
            }
        );
        assert_eq!(
            "01001"
                .parse::<InitialSpec>()
                .unwrap()
                .realize(5, 0)
                .unwrap()
                .to_string(),
            "01001"
        );
        for bad in ["", "0120", "sparse:x", "zeros:1", "medium:3"] {
            assert!(bad.parse::<InitialSpec>().is_err(), "{bad}");
        }
        assert!("0110"
            .parse::<InitialSpec>()
            .unwrap()
            .realize(5, 0)
            .is_err());
    }

    #[test]
    fn random_profiles_are_seeded() {
        let a = random_profile(20, Density::Sparse, 4);
        assert_eq!(a, random_profile(20, Density::Sparse, 4));
        let dense: usize = (0..50)
            .map(|seed| random_profile(20, Density::Dense, seed).participant_count())
            .sum();
        let sparse: usize = (0..50)
            .map(|seed| random_profile(20, Density::Sparse, seed).participant_count())
            .sum();
        // expected 600 and 200 of 1000 draws
        assert!((500..700).contains(&dense), "{dense}");
        assert!((130..270).contains(&sparse), "{sparse}");
    }
}
