//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use rand::{rngs::StdRng, Rng};
use twoorbit::braid::{torus_braid, WeightedBraid};

/// Sign of `x + y·√d` for integers, by squaring.
pub fn sign_surd(x: i128, y: i128, d: i128) -> Ordering {
    match (x.cmp(&0), y.cmp(&0)) {
        (Ordering::Equal, s) => s,
        (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        // opposite signs: compare x² with y²d
        (sx, _) => {
            let c = (x * x).cmp(&(y * y * d));
            if sx == Ordering::Greater { c } else { c.reverse() }
        }
    }
}

/// Compare `a1 + b1·√d` with `a2 + b2·√d`.
pub fn cmp_surd(a1: i128, b1: i128, a2: i128, b2: i128, d: i128) -> Ordering {
    sign_surd(a1 - a2, b1 - b2, d)
}

/// All `(m, n)` with `m·x + n·y ≤ cap` where actions are `m·1 + n·√d` (`d` square-free
/// or `d = 1`), sorted by (action, m, n).
pub fn brute_force_unit_ellipsoid(d: i128, cap: i128) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 0.. {
        if sign_surd(-cap, n, d) == Ordering::Greater {
            break;
        }
        for m in 0.. {
            if sign_surd(m - cap, n, d) == Ordering::Greater {
                break;
            }
            out.push((m as u64, n as u64));
        }
    }
    let key = |&(m, n): &(u64, u64)| (m as i128, n as i128);
    out.sort_by(|p, q| {
        let (a1, b1) = key(p);
        let (a2, b2) = key(q);
        let (x1, y1, x2, y2) = if d == 1 { (a1 + b1, 0, a2 + b2, 0) } else { (a1, b1, a2, b2) };
        cmp_surd(x1, y1, x2, y2, d.max(2)).then(p.0.cmp(&q.0)).then(p.1.cmp(&q.1))
    });
    out
}

/// Random disjoint unions: components at distinct radii (or the core), each a
/// torus braid with its own phase and multiplicity.
pub fn random_union(rng: &mut StdRng, n: u64) -> WeightedBraid {
    let mut slots = vec![0.0, 0.3, 0.55, 0.8];
    let count = rng.random_range(1..=3);
    let mut comps = Vec::new();
    for _ in 0..count {
        let r = slots.remove(rng.random_range(0..slots.len()));
        let braid = if r == 0.0 {
            torus_braid(0, 1, 0.0, 0.0, n).unwrap()
        } else {
            let b = rng.random_range(1..=3u64);
            let a = loop {
                let a = rng.random_range(-3..=3i64);
                if num_integer::gcd(a.unsigned_abs(), b) == 1 {
                    break a;
                }
            };
            torus_braid(a, b, r, rng.random_range(0.0..std::f64::consts::TAU), n).unwrap()
        };
        comps.push((braid, rng.random_range(1..=2u64)));
    }
    WeightedBraid::new(comps).unwrap()
}

