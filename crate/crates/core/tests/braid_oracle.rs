mod common;

use std::collections::HashMap;

use num_complex::Complex64;
use common::random_union;
use rand::{rngs::StdRng, SeedableRng};
use twoorbit::braid::{linking, pushoff_realization, torus_braid, weighted_writhe, writhe, Braid, WeightedBraid};
use twoorbit::perturb::{all_configs, limit_writhe};

/// Radii for the braided orbits of a perturbation, innermost first; the core sits at 0.
const RADII: [f64; 8] = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn samples(a: i64, b: u64) -> u64 {
    1024 * a.unsigned_abs().max(1) * b
}

#[test]
fn limit_writhe_matches_crossing_counts() {
    let mut cache: HashMap<(i64, u64, usize), Braid> = HashMap::new();
    let mut checked = 0;
    for cfg in all_configs(8, 4, 3) {
        let (a, b) = (cfg.a(), cfg.b());
        let n = samples(a, b);
        let mut comps = Vec::new();
        if cfg.m0() > 0 {
            comps.push((torus_braid(0, 1, 0.0, 0.0, n).unwrap(), cfg.m0()));
        }
        for (k, &mk) in cfg.parts().iter().enumerate() {
            let braid = cache.entry((a, b, k)).or_insert_with(|| torus_braid(a, b, RADII[k], 0.0, n).unwrap()).clone();
            comps.push((braid, mk));
        }
        let wb = WeightedBraid::new(comps).unwrap();
        assert_eq!(weighted_writhe(&wb).unwrap(), limit_writhe(&cfg), "{cfg:?}");
        checked += 1;
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn pushoffs_of_perturbation_braids_realize_the_limit_writhe() {
    for cfg in all_configs(4, 3, 2) {
        let (a, b) = (cfg.a(), cfg.b());
        let n = 4 * samples(a, b);
        let mut comps = Vec::new();
        if cfg.m0() > 0 {
            comps.push((torus_braid(0, 1, 0.0, 0.0, n).unwrap(), cfg.m0()));
        }
        for (k, &mk) in cfg.parts().iter().enumerate() {
            comps.push((torus_braid(a, b, RADII[2 * k + 1], 0.0, n).unwrap(), mk));
        }
        let wb = WeightedBraid::new(comps).unwrap();
        let single = pushoff_realization(&wb, Complex64::new(0.03, 0.0)).unwrap();
        assert_eq!(writhe(&single).unwrap(), limit_writhe(&cfg), "{cfg:?}");
    }
}

#[test]
fn weighted_writhe_of_random_unions() {
    let mut rng = StdRng::seed_from_u64(2024);
    for case in 0..30 {
        let wb = random_union(&mut rng, 8192);
        let single = pushoff_realization(&wb, Complex64::new(0.03, 0.0)).unwrap();
        assert_eq!(weighted_writhe(&wb).unwrap(), writhe(&single).unwrap(), "case {case}");
    }
}

#[test]
fn linking_is_bilinear_under_union() {
    let n = 6144;
    let x = torus_braid(1, 2, 0.3, 0.2, n).unwrap();
    let y = torus_braid(-2, 3, 0.55, 1.0, n).unwrap();
    let z = torus_braid(3, 1, 0.8, 0.0, n).unwrap();
    let xy = Braid::union(&[x.clone(), y.clone()]).unwrap();
    assert_eq!(linking(&xy, &z).unwrap(), linking(&x, &z).unwrap() + linking(&y, &z).unwrap());
    assert_eq!(writhe(&xy).unwrap(), writhe(&x).unwrap() + writhe(&y).unwrap() + 2 * linking(&x, &y).unwrap());
}
