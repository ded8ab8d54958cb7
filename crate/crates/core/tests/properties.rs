use flpart_core::dynamics::threshold_step;
use flpart_core::equilibrium::{costs, unique_odd_k};
use flpart_core::oracle::{brute_equilibria, OracleBudget};
use flpart_core::rational::{integer, ratio};
use flpart_core::welfare::{best_window_f, welfare_formula};
use flpart_core::*;
use num_traits::Zero;
use proptest::prelude::*;

/// Small games; `delta` sits on an exact boundary `2a/(n k)` one time in five.
fn arb_config(max_m: usize) -> impl Strategy<Value = GameConfig> {
    (
        1..=max_m,
        1u64..=1000,
        1i64..=1_000_000,
        0i64..=1_000_000,
        prop::bool::weighted(0.2),
        1usize..=32,
        -400i64..=400,
    )
        .prop_map(|(m, n, a_num, u, boundary, k, mu1)| {
            let a = ratio(a_num, 100);
            let two_a_over_n = integer(2) * &a / integer(n as i64);
            let delta = if boundary {
                two_a_over_n / integer(((k - 1) % m + 1) as i64)
            } else {
                two_a_over_n * ratio(u, 1_000_000)
            };
            GameConfig::new(m, n, a, delta, ratio(mu1, 4)).unwrap()
        })
}

fn arb_game_and_profile(max_m: usize) -> impl Strategy<Value = (GameConfig, StrategyProfile)> {
    arb_config(max_m).prop_flat_map(|cfg| {
        let m = cfg.m();
        (Just(cfg), 0u64..1 << m)
            .prop_map(move |(cfg, mask)| (cfg, StrategyProfile::from_mask(m, mask)))
    })
}

fn all_profiles(m: usize) -> impl Iterator<Item = StrategyProfile> {
    (0u64..1 << m).map(move |mask| StrategyProfile::from_mask(m, mask))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn brute_force_equilibria_group_and_match(cfg in arb_config(8)) {
        let brute = brute_equilibria(&cfg, OracleBudget::default()).unwrap();
        for s in &brute {
            prop_assert!(s.is_consecutive(), "equilibrium {} has a gap", s);
        }
        let mut analytic = enumerate_equilibria(&cfg).all_profiles();
        analytic.sort();
        prop_assert_eq!(analytic, brute);
    }

    #[test]
    fn welfare_identity((cfg, s) in arb_game_and_profile(12)) {
        let direct = social_welfare(&cfg, &s).unwrap();
        prop_assert_eq!(welfare_formula(&cfg, &s).unwrap().value, direct.clone());
        if s.participant_count() >= 1 {
            let k = s.participant_count() as i64;
            let m = cfg.m() as i64;
            let closed = integer(k - m - 1) * cfg.opt_out_cost() - f_omega(&cfg, &s.participants()).unwrap();
            prop_assert_eq!(closed, direct);
        } else {
            prop_assert_eq!(direct, -integer(cfg.m() as i64) * cfg.opt_out_cost());
        }
    }

    #[test]
    fn windows_minimize_spread(cfg in arb_config(9)) {
        for s in all_profiles(cfg.m()).filter(|s| !s.is_all_out()) {
            let f = f_omega(&cfg, &s.participants()).unwrap();
            let best = best_window_f(&cfg, s.participant_count());
            prop_assert!(f >= best);
            if !cfg.delta().is_zero() {
                prop_assert_eq!(f == best, s.is_consecutive(), "{}", s);
            }
        }
    }

    #[test]
    fn translation_invariance((cfg, s) in arb_game_and_profile(10), shift in -1000i64..=1000) {
        let moved = cfg.with_mu1(cfg.mu1() + integer(shift));
        prop_assert_eq!(costs(&cfg, &s).unwrap(), costs(&moved, &s).unwrap());
        prop_assert_eq!(is_nash(&cfg, &s).unwrap(), is_nash(&moved, &s).unwrap());
        prop_assert_eq!(social_welfare(&cfg, &s).unwrap(), social_welfare(&moved, &s).unwrap());
        prop_assert_eq!(myopic_step(&cfg, &s).unwrap(), myopic_step(&moved, &s).unwrap());
    }

    #[test]
    fn scale_consistency((cfg, s) in arb_game_and_profile(10), p in 1i64..50, q in 1i64..50) {
        let lambda = ratio(p, q);
        let scaled = GameConfig::new(
            cfg.m(),
            cfg.n(),
            cfg.a() * &lambda,
            cfg.delta() * &lambda,
            cfg.mu1() * &lambda,
        ).unwrap();
        let base = costs(&cfg, &s).unwrap();
        let after = costs(&scaled, &s).unwrap();
        for (b, a) in base.iter().zip(&after) {
            prop_assert_eq!(b * &lambda, a.clone());
        }
        prop_assert_eq!(is_nash(&cfg, &s).unwrap(), is_nash(&scaled, &s).unwrap());
        prop_assert_eq!(admissible_k(&cfg), admissible_k(&scaled));
    }

    #[test]
    fn step_matches_threshold_rule((cfg, s) in arb_game_and_profile(12)) {
        prop_assume!(!s.is_all_out());
        prop_assert_eq!(myopic_step(&cfg, &s).unwrap(), threshold_step(&cfg, &s).unwrap());
    }

    #[test]
    fn fixed_points_are_equilibria(cfg in arb_config(8)) {
        for s in all_profiles(cfg.m()) {
            let fixed = myopic_step(&cfg, &s).unwrap() == s;
            prop_assert_eq!(fixed, is_nash(&cfg, &s).unwrap(), "{}", s);
        }
    }

    #[test]
    fn consecutive_states_evolve_predictably(cfg in arb_config(20)) {
        let Some(k_star) = unique_odd_k(&cfg) else { return Ok(()) };
        let m = cfg.m();
        for size in 1..=m {
            for prev in StrategyProfile::windows(m, size) {
                let next = myopic_step(&cfg, &prev).unwrap();
                prop_assert!(next.is_consecutive(), "{} -> {}", prev, next);
                let kept = prev.participants().iter().all(|&i| next.participates(i));
                let none_joined = next.participants().iter().all(|&i| prev.participates(i));
                if size == k_star {
                    prop_assert_eq!(&next, &prev);
                } else if size < k_star {
                    prop_assert!(kept && next.participant_count() > size, "{} -> {}", prev, next);
                } else {
                    let c = next.participant_count();
                    prop_assert!(none_joined && c + 1 >= k_star && c <= k_star + 1, "{} -> {}", prev, next);
                }
            }
        }
    }

    #[test]
    fn simulation_is_deterministic((cfg, s) in arb_game_and_profile(10)) {
        let limit = flpart_core::dynamics::default_max_stages(&cfg);
        prop_assert_eq!(simulate(&cfg, &s, limit).unwrap(), simulate(&cfg, &s, limit).unwrap());
    }

    #[test]
    fn config_json_round_trip(cfg in arb_config(25)) {
        prop_assert_eq!(GameConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn decimal_and_fraction_text_parse_exactly(p in -1_000_000i64..1_000_000, scale in 0u32..6) {
        let den = 10i64.pow(scale);
        let text = if scale == 0 {
            p.to_string()
        } else {
            let sign = if p < 0 { "-" } else { "" };
            format!("{sign}{}.{:0>w$}", p.abs() / den, p.abs() % den, w = scale as usize)
        };
        prop_assert_eq!(parse_rational(&text).unwrap(), ratio(p, den));
        prop_assert_eq!(parse_rational(&format!("{p}/{den}")).unwrap(), ratio(p, den));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cost_vector_matches_single_costs(cfg in arb_config(12), mask in any::<u64>()) {
        let s = StrategyProfile::from_mask(cfg.m(), mask & ((1 << cfg.m()) - 1));
        let single: Vec<Rational> = (1..=cfg.m()).map(|i| cost(&cfg, &s, i).unwrap()).collect();
        prop_assert_eq!(costs(&cfg, &s).unwrap(), single);
    }
}
