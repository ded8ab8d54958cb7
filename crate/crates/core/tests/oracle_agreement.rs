use flpart_core::equilibrium::unique_odd_k;
use flpart_core::oracle::{verify_batch, verify_config, ConfigSampler, OracleBudget};
use flpart_core::rational::{integer, ratio};
use flpart_core::GameConfig;

#[test]
fn seeded_batch_agrees_everywhere() {
    let batch = verify_batch(7, 200, OracleBudget::default()).unwrap();
    assert_eq!(batch.results.len(), 200);
    assert!(batch.passed(), "{batch}");
    let audited = batch
        .results
        .iter()
        .filter(|r| r.dynamics.is_some())
        .count();
    assert!(audited > 20, "only {audited} configs were dynamics-audited");
    assert!(batch.to_string().starts_with("seed: 7\n"));
}

#[test]
fn sampler_hits_exact_boundaries() {
    let mut sampler = ConfigSampler::new(11);
    let on_boundary = (0..400)
        .map(|_| sampler.next_config())
        .filter(|cfg| {
            let two_a_over_n = integer(2) * cfg.opt_out_cost();
            (1..=cfg.m()).any(|k| *cfg.delta() == &two_a_over_n / integer(k as i64))
        })
        .count();
    // 10% injection plus a few accidental hits
    assert!((20..=80).contains(&on_boundary), "{on_boundary}");
}

#[test]
fn boundary_configs_agree() {
    // delta = 2a/(n k) for every k: two admissible participant counts (or k = 1 at a/n).
    for m in 1..=10 {
        for k in 1..=m {
            let delta = ratio(2 * 790, 100 * k as i64);
            let cfg = GameConfig::with_zero_origin(m, 100, integer(790), delta).unwrap();
            let v = verify_config(&cfg, OracleBudget::default()).unwrap();
            assert!(v.passed(), "{v}");
        }
    }
}

#[test]
fn odd_unique_sampler_only_returns_valid_games() {
    let mut sampler = ConfigSampler::new(3);
    for _ in 0..50 {
        assert!(unique_odd_k(&sampler.next_odd_unique()).is_some());
    }
}
