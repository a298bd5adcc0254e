//! Exact bookkeeping of how the writhe and Conley–Zehnder terms of an orbit set
//! can move when a degenerate orbit with rotation number `a/b` is perturbed.
//!
//! After perturbation, `m` copies of the orbit split into `m0` copies of an
//! orbit near the core (rotation near `(a/b)l` for its `l`-th iterate) and
//! orbits `γk` of multiplicity `mk` that wind `b` times around the core
//! (rotation near `a·l`). Every CZ term whose limit is an integer `x` may land
//! anywhere in `{2x − 1, 2x, 2x + 1}`; the others keep their limit value.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::model::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PerturbationConfig {
    a: i64,
    b: u64,
    m: u64,
    m0: u64,
    parts: Vec<u64>,
}

impl PerturbationConfig {
    pub fn new(a: i64, b: u64, m: u64, m0: u64, mut parts: Vec<u64>) -> Result<Self> {
        if b == 0 || a.unsigned_abs().gcd(&b) != 1 {
            return Err(Error::Domain(format!("need b > 0 and gcd(a,b) = 1, got ({a},{b})")));
        }
        if m == 0 {
            return Err(Error::Domain("total strand count m must be positive".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Domain("multiplicities of braided orbits must be positive".into()));
        }
        if b == 1 && m0 != 0 {
            return Err(Error::Domain("for integer rotation numbers the core multiplicity m0 is 0".into()));
        }
        let braided: u64 = parts.iter().sum();
        if m0 + b * braided != m {
            return Err(Error::Domain(format!("m0 + b·Σmk = {} differs from m = {m}", m0 + b * braided)));
        }
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Ok(Self { a, b, m, m0, parts })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn m0(&self) -> u64 {
        self.m0
    }

    /// Multiplicities of the braided orbits, in decreasing order.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    fn s1(&self) -> i64 {
        self.parts.iter().sum::<u64>() as i64
    }

    fn s2(&self) -> i64 {
        self.parts.iter().map(|p| p * p).sum::<u64>() as i64
    }
}

/// Writhe of the limiting weighted braid:
/// `a(b−1)Σmk² + 2a·m0·Σmk + ab·Σ_{k≠k'} mk mk'`.
pub fn limit_writhe(cfg: &PerturbationConfig) -> i64 {
    let (a, b) = (cfg.a, cfg.b as i64);
    let (s1, s2) = (cfg.s1(), cfg.s2());
    a * (b - 1) * s2 + 2 * a * cfg.m0 as i64 * s1 + a * b * (s1 * s1 - s2)
}

/// `⌊n/b⌋ + ⌈n/b⌉`.
fn cz_ratio(n: i64, b: i64) -> i64 {
    Integer::div_floor(&n, &b) + Integer::div_ceil(&n, &b)
}

/// Range of a CZ term whose rotation number tends to `n/b`.
fn cz_term_range(n: i64, b: i64) -> (i64, i64) {
    let c = cz_ratio(n, b);
    if n % b == 0 {
        (c - 1, c + 1)
    } else {
        (c, c)
    }
}

/// `Σ_{l=1..m} CZ(l·a/b)` for the unperturbed orbit.
pub fn unperturbed_cz_sum(a: i64, b: u64, m: u64) -> i64 {
    (1..=m as i64).map(|l| cz_ratio(a * l, b as i64)).sum()
}

/// `[min, max]` of `CZ^I(γ') − Σ_{l=1..m} CZ(γ^l)` over all perturbations.
pub fn cz_defect_range(cfg: &PerturbationConfig) -> (i64, i64) {
    let (a, b) = (cfg.a, cfg.b as i64);
    let mut lo = 0;
    let mut hi = 0;
    let mut add = |(x, y): (i64, i64)| {
        lo += x;
        hi += y;
    };
    for l in 1..=cfg.m0 as i64 {
        add(cz_term_range(a * l, b));
    }
    for &mk in &cfg.parts {
        for l in 1..=mk as i64 {
            add(cz_term_range(a * l, 1));
        }
    }
    let u = unperturbed_cz_sum(cfg.a, cfg.b, cfg.m);
    (lo - u, hi - u)
}

/// The value of [`cz_defect_range`] when every term sits at its limit.
pub fn cz_defect_center(cfg: &PerturbationConfig) -> i64 {
    let (a, b) = (cfg.a, cfg.b as i64);
    let perturbed: i64 = (1..=cfg.m0 as i64).map(|l| cz_ratio(a * l, b)).sum::<i64>()
        + cfg.parts.iter().map(|&mk| (1..=mk as i64).map(|l| 2 * a * l).sum::<i64>()).sum::<i64>();
    perturbed - unperturbed_cz_sum(cfg.a, cfg.b, cfg.m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDefect {
    pub max_abs_defect: i64,
    pub bound: i64,
    pub pass: bool,
}

/// Worst case of `|−w − CZ^I(γ') + Σ CZ(γ^l)|` against `2m`.
pub fn local_defect_bound(cfg: &PerturbationConfig) -> LocalDefect {
    let w = limit_writhe(cfg);
    let (lo, hi) = cz_defect_range(cfg);
    let max_abs_defect = (w + lo).abs().max((w + hi).abs());
    let bound = 2 * cfg.m as i64;
    LocalDefect { max_abs_defect, bound, pass: max_abs_defect <= bound }
}

/// The three quantities whose centers cancel exactly:
/// the limit writhe, the perturbed CZ center `(a/b)(m0²+m0) + aΣ(mk²+mk)`,
/// and the unperturbed CZ center `(a/b)(m0²+m0) + a(2m0+1)Σmk + ab(Σmk)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterIdentity {
    pub writhe: Rational,
    pub perturbed_center: Rational,
    pub unperturbed_center: Rational,
}

impl CenterIdentity {
    /// `−writhe − perturbed_center + unperturbed_center`; zero for every configuration.
    pub fn residual(&self) -> Rational {
        &self.unperturbed_center - &self.perturbed_center - &self.writhe
    }
}

pub fn center_identity(cfg: &PerturbationConfig) -> CenterIdentity {
    let int = |v: i64| Rational::from_integer(BigInt::from(v));
    let a = int(cfg.a);
    let ab = Rational::new(cfg.a.into(), (cfg.b as i64).into());
    let m0 = cfg.m0 as i64;
    let s1 = cfg.s1();
    let core = &ab * int(m0 * m0 + m0);
    let perturbed_center = &core + &a * int(cfg.s2() + s1);
    let unperturbed_center = &core + &a * int((2 * m0 + 1) * s1) + &a * int(cfg.b as i64 * s1 * s1);
    // the unperturbed center equals (a/b)(m² + m) by m = m0 + bΣmk
    debug_assert_eq!(unperturbed_center, &ab * int((cfg.m * cfg.m + cfg.m) as i64));
    CenterIdentity { writhe: int(limit_writhe(cfg)), perturbed_center, unperturbed_center }
}

/// Everything the global bound needs from one configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSummary {
    pub config: PerturbationConfig,
    pub writhe: i64,
    pub defect_min: i64,
    pub defect_max: i64,
    pub max_abs_defect: i64,
    pub bound: i64,
    pub pass: bool,
    pub center_residual_zero: bool,
}

impl LocalSummary {
    pub fn new(cfg: &PerturbationConfig) -> Self {
        let (defect_min, defect_max) = cz_defect_range(cfg);
        let local = local_defect_bound(cfg);
        Self {
            config: cfg.clone(),
            writhe: limit_writhe(cfg),
            defect_min,
            defect_max,
            max_abs_defect: local.max_abs_defect,
            bound: local.bound,
            pass: local.pass,
            center_residual_zero: center_identity(cfg).residual() == Rational::from_integer(0.into()),
        }
    }

    /// Range of `w + CZ^I(γ') − Σ CZ(γ^l)`, this orbit's share of the index shift.
    pub fn shift_range(&self) -> (i64, i64) {
        (self.writhe + self.defect_min, self.writhe + self.defect_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalShift {
    pub shift_min: i64,
    pub shift_max: i64,
    pub max_abs_shift: i64,
    pub bound: i64,
    pub pass: bool,
}

/// Range of `I(α',β') − I(α,β)` assembled from local pieces, against `2(Σmᵢ + Σnⱼ)`.
pub fn global_shift_from_summaries(alpha: &[&LocalSummary], beta: &[&LocalSummary]) -> GlobalShift {
    let mut lo = 0;
    let mut hi = 0;
    let mut strands = 0;
    for s in alpha {
        let (x, y) = s.shift_range();
        lo += x;
        hi += y;
        strands += s.config.m as i64;
    }
    for s in beta {
        let (x, y) = s.shift_range();
        lo -= y;
        hi -= x;
        strands += s.config.m as i64;
    }
    let max_abs_shift = lo.abs().max(hi.abs());
    let bound = 2 * strands;
    GlobalShift { shift_min: lo, shift_max: hi, max_abs_shift, bound, pass: max_abs_shift <= bound }
}

pub fn global_shift_bound(alpha: &[PerturbationConfig], beta: &[PerturbationConfig]) -> GlobalShift {
    let a: Vec<LocalSummary> = alpha.iter().map(LocalSummary::new).collect();
    let b: Vec<LocalSummary> = beta.iter().map(LocalSummary::new).collect();
    global_shift_from_summaries(&a.iter().collect::<Vec<_>>(), &b.iter().collect::<Vec<_>>())
}

/// Partitions of `n` into positive parts, each in decreasing order.
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every configuration for one rotation number `a/b` and strand count `m`.
pub fn configs_for(a: i64, b: u64, m: u64) -> Vec<PerturbationConfig> {
    let mut out = Vec::new();
    let m0_values: Vec<u64> = if b == 1 { vec![0] } else { (0..=m).rev().collect() };
    for m0 in m0_values {
        if (m - m0) % b != 0 {
            continue;
        }
        for parts in partitions((m - m0) / b) {
            out.push(PerturbationConfig::new(a, b, m, m0, parts).expect("enumerated configurations are valid"));
        }
    }
    out
}

/// All configurations with `1 ≤ m ≤ m_max`, `1 ≤ b ≤ b_max`, `|a| ≤ a_max`, `gcd(a,b) = 1`.
pub fn all_configs(m_max: u64, b_max: u64, a_max: i64) -> Vec<PerturbationConfig> {
    let mut out = Vec::new();
    for b in 1..=b_max {
        for a in -a_max..=a_max {
            if a.unsigned_abs().gcd(&b) != 1 {
                continue;
            }
            for m in 1..=m_max {
                out.extend(configs_for(a, b, m));
            }
        }
    }
    out
}

/// Local summaries for a whole configuration range, computed in parallel; the
/// output order matches [`all_configs`].
pub fn sweep(m_max: u64, b_max: u64, a_max: i64) -> Vec<LocalSummary> {
    all_configs(m_max, b_max, a_max).par_iter().map(LocalSummary::new).collect()
}
