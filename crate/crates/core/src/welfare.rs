//! Utilitarian welfare `W(s) = -sum_i c_i(s)` and its maximizers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::config::GameConfig;
use crate::equilibrium::{costs, deviation_from_mean};
use crate::error::Result;
use crate::profile::StrategyProfile;
use crate::rational::Rational;

fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Welfare of a single profile, with the spread term that drives it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WelfareEvaluation {
    pub value: Rational,
    pub f_value: Rational,
}

/// Result of a welfare maximization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WelfareReport {
    pub max_value: Rational,
    /// Sorted ascending.
    pub maximizers: Vec<StrategyProfile>,
    /// Participant counts that attain the maximum, ascending.
    pub optimal_sizes: Vec<usize>,
}

/// Direct summation of negated stage costs.
pub fn social_welfare(cfg: &GameConfig, s: &StrategyProfile) -> Result<Rational> {
    Ok(-costs(cfg, s)?.into_iter().sum::<Rational>())
}

/// Sum over `omega` of each member's absolute deviation from the set's mean.
pub fn f_omega(cfg: &GameConfig, omega: &[usize]) -> Result<Rational> {
    for &agent in omega {
        cfg.check_agent(agent)?;
    }
    if omega.is_empty() {
        return Ok(Rational::zero());
    }
    let index_sum: usize = omega.iter().map(|i| i - 1).sum();
    Ok(omega
        .iter()
        .map(|&i| deviation_from_mean(cfg, i, omega.len(), index_sum))
        .sum())
}

/// Closed form `(|Omega| - m - 1) a/n - f(Omega)` for nonempty `Omega`; `-m a/n`
/// for the all-out profile, where every agent simply pays `a/n`.
pub fn welfare_formula(cfg: &GameConfig, s: &StrategyProfile) -> Result<WelfareEvaluation> {
    s.check_len(cfg)?;
    let omega = s.participants();
    let m = cfg.m() as i64;
    if omega.is_empty() {
        return Ok(WelfareEvaluation {
            value: -rational(m) * cfg.opt_out_cost(),
            f_value: Rational::zero(),
        });
    }
    let f_value = f_omega(cfg, &omega)?;
    let value = rational(omega.len() as i64 - m - 1) * cfg.opt_out_cost() - &f_value;
    Ok(WelfareEvaluation { value, f_value })
}

/// Smallest `f` over all `k`-subsets, attained by the windows:
/// `(k^2 - 1)/4 delta` for odd `k`, `k^2/4 delta` for even `k`.
pub fn best_window_f(cfg: &GameConfig, k: usize) -> Rational {
    let k = k as i64;
    let numer = if k % 2 == 1 { k * k - 1 } else { k * k };
    Rational::new(BigInt::from(numer), BigInt::from(4)) * cfg.delta()
}

/// Best welfare achievable with exactly `k` participants.
pub fn best_welfare_with(cfg: &GameConfig, k: usize) -> Rational {
    let m = cfg.m() as i64;
    if k == 0 {
        return -rational(m) * cfg.opt_out_cost();
    }
    rational(k as i64 - m - 1) * cfg.opt_out_cost() - best_window_f(cfg, k)
}

/// Maximizes welfare over participant counts with the closed-form best
/// spread, then lists every profile that attains it.
///
/// For `k >= 1` those are the `k`-windows (and, when `delta = 0`, every
/// `k`-subset). The all-out profile ties with the singletons at `-m a/n`.
pub fn welfare_maximizers(cfg: &GameConfig) -> WelfareReport {
    let m = cfg.m();
    let by_size: Vec<Rational> = (0..=m).map(|k| best_welfare_with(cfg, k)).collect();
    let max_value = by_size.iter().max().expect("m >= 1").clone();
    let optimal_sizes: Vec<usize> = (0..=m).filter(|&k| by_size[k] == max_value).collect();

    let mut maximizers = Vec::new();
    for &k in &optimal_sizes {
        if k == 0 {
            maximizers.push(StrategyProfile::zeros(m));
        } else if cfg.delta().is_zero() {
            maximizers.extend(subsets_of_size(m, k));
        } else {
            maximizers.extend(StrategyProfile::windows(m, k));
        }
    }
    maximizers.sort();
    WelfareReport {
        max_value,
        maximizers,
        optimal_sizes,
    }
}

fn subsets_of_size(m: usize, k: usize) -> Vec<StrategyProfile> {
    // Only reached with delta = 0, where the optimum is k = m alone.
    (0u64..1 << m)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| StrategyProfile::from_mask(m, mask))
        .collect()
}
