//! Exhaustive verifiers for small games.
//!
//! Everything here works from [`cost`] and [`myopic_step`] alone and never
//! consults the closed-form characterizations it is used to check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::GameConfig;
use crate::dynamics::{myopic_step, run_with_step, Terminal, TerminalKind};
use crate::equilibrium::{cost, costs, enumerate_equilibria, require_unique_odd_k, unique_odd_k};
use crate::error::{GameError, Result};
use crate::profile::StrategyProfile;
use crate::rational::{format_exact, Rational};
use crate::welfare::{welfare_maximizers, WelfareReport};

/// Largest `m` enumerable even with a raised budget, unless overridden.
pub const HARD_CAP_M: usize = 22;
/// Profiles are enumerated as `u64` masks.
const MASK_BITS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_m: usize,
    pub override_flag: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_m: 12,
            override_flag: false,
        }
    }
}

impl OracleBudget {
    pub fn with_max_m(max_m: usize) -> Self {
        Self {
            max_m,
            override_flag: false,
        }
    }

    pub fn check(&self, m: usize) -> Result<()> {
        let limit = if self.override_flag {
            MASK_BITS
        } else {
            self.max_m.min(HARD_CAP_M)
        };
        if m > limit {
            Err(GameError::BudgetExceeded { m, max_m: limit })
        } else {
            Ok(())
        }
    }
}

fn all_profiles(m: usize) -> impl Iterator<Item = StrategyProfile> {
    (0u64..1 << m).map(move |mask| StrategyProfile::from_mask(m, mask))
}

fn is_stable(cfg: &GameConfig, s: &StrategyProfile) -> Result<bool> {
    for agent in 1..=cfg.m() {
        let stay = cost(cfg, s, agent)?;
        let flip = cost(cfg, &s.flipped(agent), agent)?;
        if flip < stay {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every pure equilibrium, by checking each unilateral flip of each of the `2^m` profiles.
/// Sorted ascending.
pub fn brute_equilibria(cfg: &GameConfig, budget: OracleBudget) -> Result<Vec<StrategyProfile>> {
    budget.check(cfg.m())?;
    let mut found = Vec::new();
    for s in all_profiles(cfg.m()) {
        if is_stable(cfg, &s)? {
            found.push(s);
        }
    }
    found.sort();
    Ok(found)
}

/// Exact welfare argmax over all `2^m` profiles by summing stage costs.
pub fn brute_welfare_max(cfg: &GameConfig, budget: OracleBudget) -> Result<WelfareReport> {
    budget.check(cfg.m())?;
    let mut best: Option<Rational> = None;
    let mut maximizers = Vec::new();
    for s in all_profiles(cfg.m()) {
        let welfare = -costs(cfg, &s)?.into_iter().sum::<Rational>();
        match &best {
            Some(b) if welfare < *b => {}
            Some(b) if welfare == *b => maximizers.push(s),
            _ => {
                best = Some(welfare);
                maximizers = vec![s];
            }
        }
    }
    maximizers.sort();
    let mut optimal_sizes: Vec<usize> = maximizers
        .iter()
        .map(StrategyProfile::participant_count)
        .collect();
    optimal_sizes.sort_unstable();
    optimal_sizes.dedup();
    Ok(WelfareReport {
        max_value: best.expect("at least one profile"),
        maximizers,
        optimal_sizes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditViolation {
    pub initial: StrategyProfile,
    pub reason: String,
}

/// Outcome of simulating the myopic dynamics from every initial profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsAudit {
    pub k_star: usize,
    pub initial_states: usize,
    pub stage_limit: usize,
    pub terminal_counts: BTreeMap<TerminalKind, usize>,
    pub max_stages_to_terminal: usize,
    /// Over nonempty initial profiles.
    pub max_stages_to_consecutive: usize,
    /// `(k* + 1) / 2`.
    pub consecutive_bound: usize,
    /// Unresolved or misclassified trajectories.
    pub violations: Vec<AuditViolation>,
    /// Nonempty starts that took longer than `consecutive_bound` to become consecutive.
    pub consecutive_bound_violations: Vec<AuditViolation>,
}

impl DynamicsAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.consecutive_bound_violations.is_empty()
    }
}

fn cached_stable(
    cache: &mut BTreeMap<StrategyProfile, bool>,
    cfg: &GameConfig,
    s: &StrategyProfile,
) -> Result<bool> {
    if let Some(&known) = cache.get(s) {
        return Ok(known);
    }
    let verdict = is_stable(cfg, s)?;
    cache.insert(s.clone(), verdict);
    Ok(verdict)
}

/// Simulates from all `2^m` initial profiles with a budget of `m + k* + 2` stages.
pub fn brute_dynamics_audit(cfg: &GameConfig, budget: OracleBudget) -> Result<DynamicsAudit> {
    budget.check(cfg.m())?;
    let k_star = require_unique_odd_k(cfg)?;
    let stage_limit = cfg.m() + k_star + 2;
    let consecutive_bound = (k_star + 1) / 2;
    let mut audit = DynamicsAudit {
        k_star,
        initial_states: 0,
        stage_limit,
        terminal_counts: BTreeMap::new(),
        max_stages_to_terminal: 0,
        max_stages_to_consecutive: 0,
        consecutive_bound,
        violations: Vec::new(),
        consecutive_bound_violations: Vec::new(),
    };
    // every trajectory walks the same 2^m-state map; tabulate it once
    let m = cfg.m();
    let table = all_profiles(m)
        .map(|s| myopic_step(cfg, &s).map(|next| next.to_mask()))
        .collect::<Result<Vec<u64>>>()?;
    let step = |s: &StrategyProfile| Ok(StrategyProfile::from_mask(m, table[s.to_mask() as usize]));
    let mut stable: BTreeMap<StrategyProfile, bool> = BTreeMap::new();
    for s0 in all_profiles(m) {
        let trajectory = run_with_step(cfg, &s0, stage_limit, Some(k_star), step)?;
        audit.initial_states += 1;
        *audit
            .terminal_counts
            .entry(trajectory.terminal.kind())
            .or_default() += 1;
        audit.max_stages_to_terminal = audit
            .max_stages_to_terminal
            .max(trajectory.stages_to_terminal);

        let violation = match &trajectory.terminal {
            Terminal::Unresolved => Some(format!("unresolved after {stage_limit} stages")),
            Terminal::Type1Fixed if !s0.is_all_out() && k_star > 1 => Some(format!(
                "collapsed to nobody participating with k* = {k_star}"
            )),
            Terminal::Type2Fixed { equilibrium }
                if !cached_stable(&mut stable, cfg, equilibrium)? =>
            {
                Some(format!("fixed point {equilibrium} is not an equilibrium"))
            }
            _ => None,
        };
        if let Some(reason) = violation {
            audit.violations.push(AuditViolation {
                initial: s0.clone(),
                reason,
            });
        }

        if !s0.is_all_out() {
            match trajectory.first_consecutive_stage() {
                Some(t) => {
                    audit.max_stages_to_consecutive = audit.max_stages_to_consecutive.max(t);
                    if t > consecutive_bound {
                        audit.consecutive_bound_violations.push(AuditViolation {
                            initial: s0.clone(),
                            reason: format!("first consecutive at stage {t} > {consecutive_bound}"),
                        });
                    }
                }
                None => audit.consecutive_bound_violations.push(AuditViolation {
                    initial: s0.clone(),
                    reason: "never consecutive".into(),
                }),
            }
        }
    }
    Ok(audit)
}

/// Random stage games for agreement checks.
///
/// `m` uniform in `1..=12`, `n` in `1..=1000`, `a` in `(0, 10000]` on a 1/100
/// grid. `delta = 2a/(n x)` with `x` uniform on a 1/1000 grid of `(0, m + 1]`,
/// so every participant count is reachable. One draw in ten puts `delta`
/// exactly on a boundary `2a/(n k)`; one in fifty sets it to zero.
#[derive(Debug, Clone)]
pub struct ConfigSampler {
    rng: ChaCha8Rng,
    pub max_m: usize,
    pub boundary_rate: f64,
}

impl ConfigSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_m: 12,
            boundary_rate: 0.1,
        }
    }

    pub fn next_config(&mut self) -> GameConfig {
        let m = self.rng.gen_range(1..=self.max_m);
        let n: u64 = self.rng.gen_range(1..=1000);
        let a = Rational::new(
            BigInt::from(self.rng.gen_range(1..=1_000_000u64)),
            BigInt::from(100),
        );
        let two_a_over_n =
            Rational::from_integer(BigInt::from(2)) * &a / Rational::from_integer(BigInt::from(n));
        let delta = if self.rng.gen_bool(self.boundary_rate) {
            let k = self.rng.gen_range(1..=m);
            two_a_over_n / Rational::from_integer(BigInt::from(k))
        } else if self.rng.gen_ratio(1, 50) {
            Rational::zero()
        } else {
            let x = self.rng.gen_range(1..=(m as u64 + 1) * 1000);
            two_a_over_n * Rational::new(BigInt::from(1000), BigInt::from(x))
        };
        let mu1 = Rational::new(
            BigInt::from(self.rng.gen_range(-400..=400i64)),
            BigInt::from(4),
        );
        GameConfig::new(m, n, a, delta, mu1).expect("sampled parameters are valid")
    }

    /// Next config with a unique odd participant count.
    pub fn next_odd_unique(&mut self) -> GameConfig {
        loop {
            let cfg = self.next_config();
            if unique_odd_k(&cfg).is_some() {
                return cfg;
            }
        }
    }
}

/// Profiles present in exactly one of two sorted lists.
fn difference(
    left: &[StrategyProfile],
    right: &[StrategyProfile],
) -> (Vec<StrategyProfile>, Vec<StrategyProfile>) {
    let only_left = left
        .iter()
        .filter(|s| !right.contains(s))
        .cloned()
        .collect();
    let only_right = right
        .iter()
        .filter(|s| !left.contains(s))
        .cloned()
        .collect();
    (only_left, only_right)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetComparison {
    pub analytic: usize,
    pub brute_force: usize,
    pub only_analytic: Vec<StrategyProfile>,
    pub only_brute_force: Vec<StrategyProfile>,
}

impl SetComparison {
    fn new(analytic: &[StrategyProfile], brute: &[StrategyProfile]) -> Self {
        let (only_analytic, only_brute_force) = difference(analytic, brute);
        Self {
            analytic: analytic.len(),
            brute_force: brute.len(),
            only_analytic,
            only_brute_force,
        }
    }

    pub fn agrees(&self) -> bool {
        self.only_analytic.is_empty() && self.only_brute_force.is_empty()
    }
}

/// Every oracle agreement for one config.
#[derive(Debug, Clone)]
pub struct ConfigVerification {
    pub config: GameConfig,
    pub admissible_k: Vec<usize>,
    pub k_star: Option<usize>,
    pub equilibria: SetComparison,
    pub welfare: SetComparison,
    pub welfare_values_agree: bool,
    /// `None` when the participant count is not unique and odd.
    pub dynamics: Option<DynamicsAudit>,
}

impl ConfigVerification {
    pub fn passed(&self) -> bool {
        self.equilibria.agrees()
            && self.welfare.agrees()
            && self.welfare_values_agree
            && self.dynamics.as_ref().map_or(true, DynamicsAudit::passed)
    }
}

pub fn verify_config(cfg: &GameConfig, budget: OracleBudget) -> Result<ConfigVerification> {
    budget.check(cfg.m())?;
    let report = enumerate_equilibria(cfg);
    let mut analytic = report.all_profiles();
    analytic.sort();
    let brute = brute_equilibria(cfg, budget)?;

    let welfare_analytic = welfare_maximizers(cfg);
    let welfare_brute = brute_welfare_max(cfg, budget)?;

    let k_star = report.k_star();
    let dynamics = match k_star {
        Some(_) => Some(brute_dynamics_audit(cfg, budget)?),
        None => None,
    };
    Ok(ConfigVerification {
        config: cfg.clone(),
        admissible_k: report.admissible_k.clone(),
        k_star,
        equilibria: SetComparison::new(&analytic, &brute),
        welfare: SetComparison::new(&welfare_analytic.maximizers, &welfare_brute.maximizers),
        welfare_values_agree: welfare_analytic.max_value == welfare_brute.max_value,
        dynamics,
    })
}

#[derive(Debug, Clone)]
pub struct BatchVerification {
    pub seed: u64,
    pub results: Vec<ConfigVerification>,
}

impl BatchVerification {
    pub fn passed(&self) -> bool {
        self.results.iter().all(ConfigVerification::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConfigVerification> {
        self.results.iter().filter(|r| !r.passed())
    }
}

/// Verifies `count` sampled configs. Dynamics audits run only where the
/// participant count is unique and odd.
pub fn verify_batch(seed: u64, count: usize, budget: OracleBudget) -> Result<BatchVerification> {
    let mut sampler = ConfigSampler::new(seed);
    sampler.max_m = sampler.max_m.min(budget.max_m.max(1));
    let results = (0..count)
        .map(|_| verify_config(&sampler.next_config(), budget))
        .collect::<Result<_>>()?;
    Ok(BatchVerification { seed, results })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn join_profiles(profiles: &[StrategyProfile]) -> String {
    profiles
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn describe_config(cfg: &GameConfig) -> String {
    format!(
        "m={} n={} a={} delta={} mu1={}",
        cfg.m(),
        cfg.n(),
        format_exact(cfg.a()),
        format_exact(cfg.delta()),
        format_exact(cfg.mu1())
    )
}

impl fmt::Display for SetComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} analytic, {} brute force)",
            verdict(self.agrees()),
            self.analytic,
            self.brute_force
        )?;
        if !self.only_analytic.is_empty() {
            write!(
                f,
                "\n  only analytic: {}",
                join_profiles(&self.only_analytic)
            )?;
        }
        if !self.only_brute_force.is_empty() {
            write!(
                f,
                "\n  only brute force: {}",
                join_profiles(&self.only_brute_force)
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for DynamicsAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self
            .terminal_counts
            .iter()
            .map(|(kind, n)| format!("{kind}={n}"))
            .collect();
        write!(
            f,
            "{} ({} trajectories classified; {}; max stages to terminal {} (limit {}); max stages to consecutive {} (bound {}))",
            verdict(self.passed()),
            self.initial_states,
            counts.join(" "),
            self.max_stages_to_terminal,
            self.stage_limit,
            self.max_stages_to_consecutive,
            self.consecutive_bound
        )?;
        for v in self
            .violations
            .iter()
            .chain(&self.consecutive_bound_violations)
        {
            write!(f, "\n  s0={} {}", v.initial, v.reason)?;
        }
        Ok(())
    }
}

impl fmt::Display for ConfigVerification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.admissible_k.iter().map(ToString::to_string).collect();
        writeln!(f, "config: {}", describe_config(&self.config))?;
        writeln!(f, "admissible_k: {}", ks.join(","))?;
        writeln!(f, "assumption_odd_unique: {}", self.k_star.is_some())?;
        writeln!(f, "equilibria: {}", self.equilibria)?;
        writeln!(
            f,
            "welfare: {}{}",
            self.welfare,
            if self.welfare_values_agree {
                ""
            } else {
                "\n  maximum values differ"
            }
        )?;
        match &self.dynamics {
            Some(audit) => writeln!(f, "dynamics: {audit}")?,
            None => writeln!(
                f,
                "dynamics: SKIPPED (participant count not unique and odd)"
            )?,
        }
        write!(f, "result: {}", verdict(self.passed()))
    }
}

impl fmt::Display for BatchVerification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        let audited = self.results.iter().filter(|r| r.dynamics.is_some()).count();
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "configs: {}", self.results.len())?;
        writeln!(f, "dynamics_audited: {audited}")?;
        writeln!(f, "failed: {failed}")?;
        for failure in self.failures() {
            writeln!(f, "--- counterexample")?;
            writeln!(f, "{failure}")?;
        }
        write!(f, "result: {}", verdict(self.passed()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn game(m: usize, delta: i64) -> GameConfig {
        GameConfig::with_zero_origin(m, 100, integer(790), integer(delta)).unwrap()
    }

    fn strings(v: &[StrategyProfile]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn brute_equilibria_examples() {
        let b = OracleBudget::default();
        assert_eq!(
            strings(&brute_equilibria(&game(5, 4), b).unwrap()),
            ["00000", "00111", "01110", "11100"]
        );
        assert_eq!(
            strings(&brute_equilibria(&game(2, 20), b).unwrap()),
            ["00", "01", "10"]
        );
        assert_eq!(
            strings(&brute_equilibria(&game(1, 3), b).unwrap()),
            ["0", "1"]
        );
    }

    #[test]
    fn brute_welfare_examples() {
        let b = OracleBudget::default();
        let r = brute_welfare_max(&game(5, 4), b).unwrap();
        assert_eq!(strings(&r.maximizers), ["00111", "01110", "11100"]);
        let r = brute_welfare_max(&game(3, 0), b).unwrap();
        assert_eq!(strings(&r.maximizers), ["111"]);
        let r = brute_welfare_max(&game(1, 3), b).unwrap();
        assert_eq!(strings(&r.maximizers), ["0", "1"]);
        assert_eq!(r.optimal_sizes, vec![0, 1]);
    }

    #[test]
    fn budget_guard() {
        let big = game(30, 1);
        assert!(matches!(
            brute_equilibria(&big, OracleBudget::default()),
            Err(GameError::BudgetExceeded { m: 30, max_m: 12 })
        ));
        assert!(OracleBudget::with_max_m(40).check(23).is_err());
        assert!(OracleBudget::with_max_m(40).check(22).is_ok());
        let lifted = OracleBudget {
            max_m: 12,
            override_flag: true,
        };
        assert!(lifted.check(30).is_ok());
    }

    #[test]
    fn dynamics_audit_fixture() {
        let audit = brute_dynamics_audit(&game(5, 4), OracleBudget::default()).unwrap();
        assert_eq!(audit.initial_states, 32);
        assert!(audit.passed(), "{audit}");
        assert!(audit.max_stages_to_terminal <= 5);
        assert_eq!(
            audit.terminal_counts.get(&TerminalKind::Type1Fixed),
            Some(&1)
        );
    }

    #[test]
    fn dynamics_audit_refuses_even_full_branch() {
        let err = brute_dynamics_audit(&game(12, 1), OracleBudget::default()).unwrap_err();
        assert!(
            matches!(err, GameError::AssumptionViolated { ref admissible, .. } if admissible == &[12])
        );
        assert!(err.to_string().contains("k* = m branch"), "{err}");
    }

    #[test]
    fn sampler_is_seeded() {
        let a: Vec<_> = (0..5)
            .map({
                let mut s = ConfigSampler::new(7);
                move |_| s.next_config()
            })
            .collect();
        let b: Vec<_> = (0..5)
            .map({
                let mut s = ConfigSampler::new(7);
                move |_| s.next_config()
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn verify_fixture_passes() {
        let v = verify_config(&game(5, 4), OracleBudget::default()).unwrap();
        assert!(v.passed(), "{v}");
        assert_eq!(v.equilibria.brute_force, 4);
        assert_eq!(v.dynamics.as_ref().unwrap().initial_states, 32);
    }
}
