//! Ordered action spectrum `{m1 T1 + m2 T2}` of a two-orbit model, ECH spectral
//! invariants of irrational ellipsoids and their volume asymptotics.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::index::ech_index;
use crate::model::{make_ellipsoid_model, OrbitId, Rational, Scalar, ScalarError, Surd, TwoOrbitModel};
use crate::{Error, Result};

/// Conservative per-entry footprint used for the memory budget (the entry plus
/// the heap allocations of its exact action).
pub const ENTRY_BYTES: u64 = 256;
const HEAP_ITEM_BYTES: u64 = 64;
pub const DEFAULT_BUDGET: u64 = 2 << 30;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub action: Scalar,
    pub m1: u64,
    pub m2: u64,
    pub rank: u64,
    pub index: Option<i64>,
}

impl SpectrumEntry {
    /// `action² / (2·rank·vol)`; undefined at rank 0.
    pub fn ratio_to_vol(&self, vol: &Scalar) -> Option<f64> {
        if self.rank == 0 {
            return None;
        }
        let sq = self.action.checked_mul(&self.action).ok()?;
        sq.checked_div(&vol.scale_int(2 * self.rank as i64)).ok().map(|r| r.to_f64())
    }
}

/// Action `(x + y√d)/den` kept as integers for fast exact ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Key {
    x: i128,
    y: i128,
}

fn sign_of_surd(x: i128, y: i128, d: u64) -> Ordering {
    let sx = x.signum();
    let sy = y.signum();
    if sy == 0 || sx == sy {
        return (if sx == 0 { sy } else { sx }).cmp(&0);
    }
    if sx == 0 {
        return sy.cmp(&0);
    }
    let lhs = x.checked_mul(x);
    let rhs = y.checked_mul(y).and_then(|v| v.checked_mul(d as i128));
    let x_dominates = match (lhs, rhs) {
        (Some(l), Some(r)) => l > r,
        _ => {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            &x * &x > &y * &y * BigInt::from(d)
        }
    };
    (if x_dominates { sx } else { sy }).cmp(&0)
}

fn cmp_keys(a: Key, b: Key, d: u64) -> Ordering {
    match (a.x.checked_sub(b.x), a.y.checked_sub(b.y)) {
        (Some(dx), Some(dy)) => sign_of_surd(dx, dy, d),
        _ => {
            let dx = BigInt::from(a.x) - BigInt::from(b.x);
            let dy = BigInt::from(a.y) - BigInt::from(b.y);
            let s = Surd::new(Rational::from_integer(dx), Rational::from_integer(dy), d);
            s.signum().cmp(&0)
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Item {
    key: Key,
    m1: u64,
    m2: u64,
    step: u64,
    d: u64,
}

impl Item {
    fn order(&self, other: &Self) -> Ordering {
        cmp_keys(self.key, other.key, self.d).then(self.m1.cmp(&other.m1)).then(self.m2.cmp(&other.m2))
    }
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Equal
    }
}

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.order(self)
    }
}

/// Streaming enumeration in exact (action, m1, m2) order.
///
/// One frontier per `m2`-column; column `c` is opened only once `c·T2` is no
/// larger than the current minimum, so memory grows like the number of columns
/// that can still contribute.
pub struct SpectrumIter {
    p: u64,
    h: [u64; 2],
    d: u64,
    den: BigInt,
    t: [Key; 2],
    heap: BinaryHeap<Item>,
    next_col: u64,
    rank: u64,
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or(Error::Scalar(ScalarError::Overflow))
}

impl SpectrumIter {
    pub fn new(model: &TwoOrbitModel) -> Result<Self> {
        let t1 = model.period(OrbitId::One).as_exact()?;
        let t2 = model.period(OrbitId::Two).as_exact()?;
        let d = match (t1.radicand(), t2.radicand()) {
            (0, e) | (e, 0) => e,
            (d, e) if d == e => d,
            (d, e) => return Err(ScalarError::FieldMismatch(d, e).into()),
        };
        let den = [t1.rational_part(), t1.coeff(), t2.rational_part(), t2.coeff()]
            .iter()
            .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let key = |s: &Surd| -> Result<Key> {
            let x = s.rational_part().numer() * (&den / s.rational_part().denom());
            let y = s.coeff().numer() * (&den / s.coeff().denom());
            Ok(Key { x: to_i128(&x)?, y: to_i128(&y)? })
        };
        let t = [key(t1)?, key(t2)?];
        Ok(Self {
            p: model.p(),
            h: [model.h(OrbitId::One), model.h(OrbitId::Two)],
            d,
            den,
            t,
            heap: BinaryHeap::new(),
            next_col: 0,
            rank: 0,
        })
    }

    fn key_of(&self, m1: u64, m2: u64) -> Key {
        let lin = |a: i128, b: i128| {
            (m1 as i128)
                .checked_mul(a)
                .and_then(|u| (m2 as i128).checked_mul(b).and_then(|v| u.checked_add(v)))
                .expect("action exceeds the 128-bit range")
        };
        Key { x: lin(self.t[0].x, self.t[1].x), y: lin(self.t[0].y, self.t[1].y) }
    }

    /// Smallest admissible `m1` in column `m2` and the column step, if any.
    fn column_start(&self, m2: u64) -> Option<(u64, u64)> {
        let p = self.p as i128;
        let h1 = self.h[0] as i128;
        let target = (-((m2 as i128 % p) * self.h[1] as i128)).rem_euclid(p);
        let g = h1.gcd(&p);
        if target % g != 0 {
            return None;
        }
        let step = p / g;
        if step == 1 {
            return Some((0, 1));
        }
        let inv = (h1 / g).extended_gcd(&step).x.rem_euclid(step);
        let r = ((target / g) * inv).rem_euclid(step);
        Some((r as u64, step as u64))
    }

    fn open_columns(&mut self) {
        loop {
            let c = self.next_col;
            let floor_key = self.key_of(0, c);
            let open = match self.heap.peek() {
                None => true,
                Some(top) => cmp_keys(floor_key, top.key, self.d) != Ordering::Greater,
            };
            if !open {
                return;
            }
            self.next_col += 1;
            if let Some((m1, step)) = self.column_start(c) {
                self.heap.push(Item { key: self.key_of(m1, c), m1, m2: c, step, d: self.d });
            }
        }
    }

    fn action(&self, key: Key) -> Scalar {
        let r = Rational::new(BigInt::from(key.x), self.den.clone());
        let s = Rational::new(BigInt::from(key.y), self.den.clone());
        Scalar::Exact(Surd::new(r, s, self.d))
    }

    pub fn frontier_len(&self) -> usize {
        self.heap.len()
    }
}

impl Iterator for SpectrumIter {
    type Item = SpectrumEntry;

    fn next(&mut self) -> Option<SpectrumEntry> {
        self.open_columns();
        let top = self.heap.pop()?;
        let m1 = top.m1 + top.step;
        self.heap.push(Item { key: self.key_of(m1, top.m2), m1, ..top });
        let entry = SpectrumEntry { action: self.action(top.key), m1: top.m1, m2: top.m2, rank: self.rank, index: None };
        self.rank += 1;
        Some(entry)
    }
}

/// The `k_max` smallest admissible actions, in exact order with ties broken by `(m1, m2)`.
pub fn enumerate_spectrum(model: &TwoOrbitModel, k_max: u64) -> Result<Vec<SpectrumEntry>> {
    enumerate_spectrum_with_budget(model, k_max, DEFAULT_BUDGET)
}

pub fn enumerate_spectrum_with_budget(model: &TwoOrbitModel, k_max: u64, budget: u64) -> Result<Vec<SpectrumEntry>> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let mut it = SpectrumIter::new(model)?;
    let mut out = Vec::new();
    while (out.len() as u64) < k_max {
        let used = (out.len() as u64 + 1) * ENTRY_BYTES + it.frontier_len() as u64 * HEAP_ITEM_BYTES;
        if used > budget {
            return Err(Error::BudgetExceeded { completed: out.len() as u64, budget });
        }
        match it.next() {
            Some(e) => out.push(e),
            None => break,
        }
    }
    Ok(out)
}

/// Fill in the ECH index of every entry.
pub fn attach_indices(model: &TwoOrbitModel, entries: &mut [SpectrumEntry]) -> Result<()> {
    for e in entries {
        e.index = Some(ech_index(model, e.m1, e.m2)?);
    }
    Ok(())
}

fn irrational_ellipsoid(a: &Scalar, b: &Scalar) -> Result<TwoOrbitModel> {
    let ratio = a.checked_div(b)?;
    if ratio.as_exact()?.is_rational() {
        return Err(Error::DegenerateSpectrum);
    }
    make_ellipsoid_model(a, b)
}

fn certify(model: &TwoOrbitModel, e: &SpectrumEntry) -> Result<i64> {
    let index = ech_index(model, e.m1, e.m2)?;
    if index != 2 * e.rank as i64 {
        return Err(Error::IndexMismatch { rank: e.rank, expected: 2 * e.rank as i64, got: index });
    }
    Ok(index)
}

/// The k-th ECH spectral invariant `N_k` of `E(a,b)` for irrational `a/b`,
/// certified by `ech_index = 2k` of its generator.
pub fn ech_spectral_invariant(a: &Scalar, b: &Scalar, k: u64) -> Result<Scalar> {
    let model = irrational_ellipsoid(a, b)?;
    let entry = SpectrumIter::new(&model)?.nth(k as usize).expect("the ellipsoid spectrum is infinite");
    certify(&model, &entry)?;
    Ok(entry.action)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeRow {
    pub k: u64,
    #[serde(serialize_with = "ser_display")]
    pub n_k: Scalar,
    /// `N_k² / (2k)`
    pub ratio: f64,
    /// `N_k²/(2k) − ab`
    pub deviation: f64,
    /// `N_k²/(2k·ab) − 1`
    pub relative: f64,
}

fn ser_display<S: serde::Serializer>(v: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `N_k²/(2k)` against the volume `ab` for every requested `k`, evaluated exactly
/// and rounded once at the end.
pub fn volume_asymptotics(a: &Scalar, b: &Scalar, ks: &[u64]) -> Result<Vec<VolumeRow>> {
    if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) || ks[0] == 0 {
        return Err(Error::Domain("ks must be a nonempty increasing list of positive integers".into()));
    }
    let model = irrational_ellipsoid(a, b)?;
    let vol = a.checked_mul(b)?;
    let mut it = SpectrumIter::new(&model)?;
    let mut rows = Vec::with_capacity(ks.len());
    let mut pos = 0u64;
    for &k in ks {
        let entry = it.nth((k - pos) as usize).expect("the ellipsoid spectrum is infinite");
        pos = k + 1;
        certify(&model, &entry)?;
        let ratio = entry.action.checked_mul(&entry.action)?.checked_div(&Scalar::from_integer(2 * k as i64))?;
        let deviation = ratio.checked_sub(&vol)?;
        let relative = ratio.checked_div(&vol)?.checked_sub(&Scalar::from_integer(1))?;
        rows.push(VolumeRow {
            k,
            n_k: entry.action,
            ratio: ratio.to_f64(),
            deviation: deviation.to_f64(),
            relative: relative.to_f64(),
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub checked: u64,
    pub strictly_increasing: bool,
    /// Rank where the first tie starts, and the tied action.
    pub first_tie: Option<(u64, Scalar)>,
    /// First rank whose action is smaller than its predecessor (unsorted input).
    pub first_decrease: Option<u64>,
}

pub fn monotonicity_check(entries: &[SpectrumEntry]) -> Result<MonotonicityReport> {
    monotonicity_check_iter(entries.iter().cloned())
}

pub fn monotonicity_check_iter(entries: impl IntoIterator<Item = SpectrumEntry>) -> Result<MonotonicityReport> {
    let mut report = MonotonicityReport { checked: 0, strictly_increasing: true, first_tie: None, first_decrease: None };
    let mut prev: Option<Scalar> = None;
    for (i, e) in entries.into_iter().enumerate() {
        if let Some(p) = &prev {
            match p.try_cmp(&e.action)? {
                Ordering::Less => {}
                Ordering::Equal => {
                    report.strictly_increasing = false;
                    report.first_tie.get_or_insert((i as u64 - 1, e.action.clone()));
                }
                Ordering::Greater => {
                    report.strictly_increasing = false;
                    report.first_decrease.get_or_insert(i as u64);
                }
            }
        }
        report.checked += 1;
        prev = Some(e.action);
    }
    Ok(report)
}

/// Whether `T1/T2` is irrational (the spectrum then has no ties).
pub fn ratio_is_irrational(model: &TwoOrbitModel) -> Result<bool> {
    let r = model.period(OrbitId::One).checked_div(model.period(OrbitId::Two))?;
    Ok(!r.as_exact()?.is_rational())
}

/// Every `(m1, m2)` that can appear among the `k` smallest actions satisfies
/// `m1 T1 + m2 T2 ≤ k·min(T1,T2)·p`; used to size brute-force cross-checks.
pub fn brute_force_bound(model: &TwoOrbitModel, k: u64) -> Result<(u64, u64)> {
    let t1 = model.period(OrbitId::One);
    let t2 = model.period(OrbitId::Two);
    let tmin = if t1.try_cmp(t2)?.is_le() { t1 } else { t2 };
    let cap = tmin.scale_int((k * model.p()) as i64);
    let n1 = cap.checked_div(t1)?.floor()?.max(0) as u64;
    let n2 = cap.checked_div(t2)?.floor()?.max(0) as u64;
    Ok((n1, n2))
}
