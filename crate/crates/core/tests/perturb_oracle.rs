use proptest::prelude::*;
use twoorbit::perturb::{
    all_configs, center_identity, cz_defect_range, global_shift_bound, limit_writhe, local_defect_bound, unperturbed_cz_sum,
    PerturbationConfig,
};

/// `⌊x⌋ + ⌈x⌉` for `x = num/den`, computed in floating point away from integers.
fn cz_near(num: i64, den: i64, nudge: f64) -> i64 {
    let x = num as f64 / den as f64 + nudge;
    (x.floor() + x.ceil()) as i64
}

/// Every CZ term of the perturbed orbit set, as the list of values it can take
/// when its rotation number is nudged by `{−η, 0, +η}` off its limit.
fn term_choices(cfg: &PerturbationConfig) -> Vec<Vec<i64>> {
    let (a, b) = (cfg.a(), cfg.b() as i64);
    let eta = 1e-6;
    let options = |num: i64, den: i64| {
        let mut v: Vec<i64> = [-eta, 0.0, eta].iter().map(|&n| if n == 0.0 { num.div_euclid(den) * 2 + i64::from(num.rem_euclid(den) != 0) } else { cz_near(num, den, n) }).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut out = Vec::new();
    for l in 1..=cfg.m0() as i64 {
        out.push(options(a * l, b));
    }
    for &mk in cfg.parts() {
        for l in 1..=mk as i64 {
            out.push(options(a * l, 1));
        }
    }
    out
}

fn brute_force_range(cfg: &PerturbationConfig) -> (i64, i64) {
    let choices = term_choices(cfg);
    let mut sums = vec![0i64];
    for c in &choices {
        sums = sums.iter().flat_map(|s| c.iter().map(move |v| s + v)).collect();
        sums.sort_unstable();
        sums.dedup();
    }
    let u = unperturbed_cz_sum(cfg.a(), cfg.b(), cfg.m());
    (sums[0] - u, sums[sums.len() - 1] - u)
}

#[test]
fn defect_range_matches_exhaustive_choice() {
    for cfg in all_configs(6, 4, 5) {
        assert_eq!(cz_defect_range(&cfg), brute_force_range(&cfg), "{cfg:?}");
    }
}

#[test]
fn every_configuration_satisfies_the_local_bound_and_center_identity() {
    for cfg in all_configs(10, 5, 7) {
        assert!(local_defect_bound(&cfg).pass, "{cfg:?}");
        assert_eq!(center_identity(&cfg).residual(), twoorbit::Rational::from_integer(0.into()), "{cfg:?}");
    }
}

#[test]
fn writhe_examples_by_hand() {
    // one braided (1,2) orbit: a(b−1) = 1
    assert_eq!(limit_writhe(&PerturbationConfig::new(1, 2, 2, 0, vec![1]).unwrap()), 1);
    // core plus one (1,2) orbit: a(b−1) + 2a·m0·Σmk = 1 + 2
    assert_eq!(limit_writhe(&PerturbationConfig::new(1, 2, 3, 1, vec![1]).unwrap()), 3);
    // two (2,3) orbits of multiplicity 1: 2·a(b−1) + 2ab = 8 + 12
    assert_eq!(limit_writhe(&PerturbationConfig::new(2, 3, 6, 0, vec![1, 1]).unwrap()), 20);
    // integer rotation: writhe a·(Σmk)² − a·Σmk² from pairwise linking only
    assert_eq!(limit_writhe(&PerturbationConfig::new(-3, 1, 3, 0, vec![2, 1]).unwrap()), -12);
}

fn config() -> impl Strategy<Value = PerturbationConfig> {
    (1u64..=5, -7i64..=7, 1u64..=12).prop_filter_map("coprime", |(b, a, m)| {
        if num_integer::gcd(a.unsigned_abs(), b) != 1 {
            return None;
        }
        let all = twoorbit::perturb::configs_for(a, b, m);
        (!all.is_empty()).then_some(all)
    })
    .prop_flat_map(|all| prop::sample::select(all))
}

proptest! {
    #[test]
    fn global_shift_is_bounded(alpha in prop::collection::vec(config(), 0..4), beta in prop::collection::vec(config(), 0..4)) {
        let g = global_shift_bound(&alpha, &beta);
        prop_assert!(g.pass);
        let strands: u64 = alpha.iter().chain(&beta).map(|c| c.m()).sum();
        prop_assert_eq!(g.bound, 2 * strands as i64);
        prop_assert!(g.shift_min <= g.shift_max);
    }

    #[test]
    fn swapping_sides_negates_the_shift(alpha in prop::collection::vec(config(), 0..3), beta in prop::collection::vec(config(), 0..3)) {
        let g = global_shift_bound(&alpha, &beta);
        let h = global_shift_bound(&beta, &alpha);
        prop_assert_eq!((g.shift_min, g.shift_max), (-h.shift_max, -h.shift_min));
    }
}
