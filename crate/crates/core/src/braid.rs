//! Sampled closed braids in the solid torus `S¹ × D²`, with writhe and linking
//! numbers counted as signed crossings of the diagram `(t, Re z)`.
//!
//! Framing is the constant one coming from the product structure. A crossing
//! between strands `i` and `j` happens on a sample step where `Re(zᵢ − zⱼ)`
//! changes sign; its sign is the sign of `Re(zᵢ − zⱼ)` before the step times
//! the sign of `Im(zᵢ − zⱼ)` at the crossing. With this convention the
//! `(1,2)` torus braid has writhe `+1`.

use std::fmt::Write as _;
use std::io::BufRead;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Result};

/// Required ratio between the minimal strand separation and the per-step motion.
pub const MARGIN: f64 = 10.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Braid {
    period: f64,
    /// `samples[n][j]`: strand `j` at time `n·period/N`.
    samples: Vec<Vec<Complex64>>,
    /// Strand `j` at time `period` coincides with strand `perm[j]` at time 0.
    perm: Vec<usize>,
}

fn min_samples(a: i64, b: u64) -> u64 {
    64 * a.unsigned_abs().max(1) * b
}

impl Braid {
    pub fn new(period: f64, samples: Vec<Vec<Complex64>>, perm: Vec<usize>) -> Result<Self> {
        let d = perm.len();
        if d == 0 || samples.len() < 2 {
            return Err(Error::Domain("a braid needs at least one strand and two samples".into()));
        }
        if !(period > 0.0) {
            return Err(Error::Domain("braid period must be positive".into()));
        }
        if samples.iter().any(|s| s.len() != d) {
            return Err(Error::Domain(format!("every sample must hold {d} points")));
        }
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain("closing map is not a permutation".into()));
            }
        }
        let braid = Self { period, samples, perm };
        braid.validate()?;
        Ok(braid)
    }

    /// Infer the closing permutation by nearest-point continuation.
    pub fn from_samples(period: f64, samples: Vec<Vec<Complex64>>) -> Result<Self> {
        let (Some(first), Some(last)) = (samples.first(), samples.last()) else {
            return Err(Error::Domain("a braid needs samples".into()));
        };
        let perm = last
            .iter()
            .map(|z| {
                (0..first.len())
                    .min_by(|&a, &b| (first[a] - z).norm().total_cmp(&(first[b] - z).norm()))
                    .unwrap_or(0)
            })
            .collect();
        Self::new(period, samples, perm)
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn samples(&self) -> &[Vec<Complex64>] {
        &self.samples
    }

    /// Position of strand `j` after step `n` (the last step wraps through the closing map).
    fn after(&self, n: usize, j: usize) -> Complex64 {
        if n + 1 < self.samples.len() {
            self.samples[n + 1][j]
        } else {
            self.samples[0][self.perm[j]]
        }
    }

    /// Largest distance any strand moves in one sample step.
    pub fn motion_bound(&self) -> f64 {
        let mut m = 0.0f64;
        for n in 0..self.samples.len() {
            for j in 0..self.strands() {
                m = m.max((self.after(n, j) - self.samples[n][j]).norm());
            }
        }
        m
    }

    /// Smallest distance between two strands at a sample time.
    pub fn min_separation(&self) -> f64 {
        let mut m = f64::INFINITY;
        for s in &self.samples {
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    m = m.min((s[i] - s[j]).norm());
                }
            }
        }
        m
    }

    fn validate(&self) -> Result<()> {
        let motion = self.motion_bound();
        let sep = self.min_separation();
        if sep < MARGIN * motion {
            return Err(Error::Resolution(format!(
                "strand separation {sep:.3e} is below {MARGIN}x the per-step motion {motion:.3e}"
            )));
        }
        let first = &self.samples[0];
        let last = &self.samples[self.samples.len() - 1];
        for (j, z) in last.iter().enumerate() {
            let target = (first[self.perm[j]] - z).norm();
            if first.iter().any(|w| (w - z).norm() < target) {
                return Err(Error::Resolution(format!("closing map disagrees with nearest-point continuation at strand {j}")));
            }
        }
        Ok(())
    }

    /// Complex conjugate braid (reverses the ambient orientation).
    pub fn mirror(&self) -> Self {
        let samples = self.samples.iter().map(|s| s.iter().map(|z| z.conj()).collect()).collect();
        Self { period: self.period, samples, perm: self.perm.clone() }
    }

    /// The braid translated by a constant vector.
    pub fn translated(&self, v: Complex64) -> Self {
        let samples = self.samples.iter().map(|s| s.iter().map(|z| z + v).collect()).collect();
        Self { period: self.period, samples, perm: self.perm.clone() }
    }

    /// Union of braids sampled on the same grid, as a single braid.
    pub fn union(parts: &[Braid]) -> Result<Self> {
        let Some(head) = parts.first() else {
            return Err(Error::Domain("empty union".into()));
        };
        if parts.iter().any(|b| b.sample_count() != head.sample_count() || b.period != head.period) {
            return Err(Error::Domain("braids in a union must share the sample grid".into()));
        }
        let mut samples = vec![Vec::new(); head.sample_count()];
        let mut perm = Vec::new();
        for b in parts {
            let offset = perm.len();
            perm.extend(b.perm.iter().map(|p| p + offset));
            for (row, s) in samples.iter_mut().zip(&b.samples) {
                row.extend_from_slice(s);
            }
        }
        Self::new(head.period, samples, perm)
    }

    /// Line format: `d T samples`, then one line of `2d` floats per sample time.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.strands(), self.period, self.sample_count());
        for s in &self.samples {
            let row: Vec<String> = s.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn from_reader(reader: impl BufRead) -> Result<Self> {
        let mut lines = reader.lines().map(|l| l.map_err(|e| Error::Parse(e.to_string())));
        let mut next_line = || -> Result<Option<String>> {
            for l in lines.by_ref() {
                let l = l?;
                let t = l.trim();
                if !t.is_empty() && !t.starts_with('#') {
                    return Ok(Some(t.to_string()));
                }
            }
            Ok(None)
        };
        let header = next_line()?.ok_or_else(|| Error::Parse("missing braid header".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(Error::Parse(format!("header must be `d T samples`, got `{header}`")));
        }
        let d: usize = h[0].parse().map_err(|_| Error::Parse(format!("bad strand count `{}`", h[0])))?;
        let period: f64 = h[1].parse().map_err(|_| Error::Parse(format!("bad period `{}`", h[1])))?;
        let n: usize = h[2].parse().map_err(|_| Error::Parse(format!("bad sample count `{}`", h[2])))?;
        let mut samples = Vec::with_capacity(n);
        for row in 0..n {
            let line = next_line()?.ok_or_else(|| Error::Parse(format!("expected {n} sample lines, got {row}")))?;
            let vals: Vec<f64> = line
                .split_whitespace()
                .map(|v| v.parse::<f64>().map_err(|_| Error::Parse(format!("bad float `{v}` on sample {row}"))))
                .collect::<Result<_>>()?;
            if vals.len() != 2 * d {
                return Err(Error::Parse(format!("sample {row} has {} values, expected {}", vals.len(), 2 * d)));
            }
            samples.push(vals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect());
        }
        if next_line()?.is_some() {
            return Err(Error::Parse("trailing data after the last sample".into()));
        }
        Self::from_samples(period, samples)
    }
}

/// `d = b` strands `radius·exp(i·phase)·exp(2πi(a t/T + j)/b)` with `T = 1`.
pub fn torus_braid(a: i64, b: u64, radius: f64, phase: f64, samples: u64) -> Result<Braid> {
    if b == 0 || a.unsigned_abs().gcd(&b) != 1 {
        return Err(Error::Domain(format!("torus braid needs b > 0 and gcd(a,b) = 1, got ({a},{b})")));
    }
    if samples < min_samples(a, b) {
        return Err(Error::Resolution(format!(
            "{samples} samples are too few for the ({a},{b}) torus braid, need {}",
            min_samples(a, b)
        )));
    }
    let bf = b as f64;
    let rot = Complex64::from_polar(radius, phase);
    let grid = (0..samples)
        .map(|n| {
            let t = n as f64 / samples as f64;
            (0..b)
                .map(|j| rot * Complex64::from_polar(1.0, std::f64::consts::TAU * (a as f64 * t + j as f64) / bf))
                .collect()
        })
        .collect();
    let perm = (0..b).map(|j| (j as i64 + a).rem_euclid(b as i64) as usize).collect();
    Braid::new(1.0, grid, perm)
}

/// Smallest sample count accepted by [`torus_braid`].
pub fn torus_braid_min_samples(a: i64, b: u64) -> u64 {
    min_samples(a, b)
}

/// Real parts closer than this count as tied.
const TIE: f64 = 1e-12;

/// Which side of the projection line `v` is on. Ties fall back to `Im v`, as if
/// the projection were tilted infinitesimally; this keeps the answer
/// antisymmetric when a crossing lands on a sample, where the closing step
/// sees the same pair in the opposite order.
fn side(v: Complex64) -> i64 {
    let key = if v.re.abs() <= TIE { v.im } else { v.re };
    if key >= 0.0 {
        1
    } else {
        -1
    }
}

/// Signed crossings between strand `i` of `x` and strand `j` of `y`, followed
/// through the full period (closing maps included) starting at time 0.
fn crossings_between(x: &Braid, y: &Braid, pairs: &[(usize, usize)], guard: f64) -> Result<i64> {
    let mut total = 0i64;
    for &(i, j) in pairs {
        for n in 0..x.samples.len() {
            let before = x.samples[n][i] - y.samples[n][j];
            let after = x.after(n, i) - y.after(n, j);
            let (s0, s1) = (side(before), side(after));
            if s0 == s1 {
                continue;
            }
            let (u0, u1) = (before.re, after.re);
            let s = if u0 == u1 { 0.0 } else { (u0 / (u0 - u1)).clamp(0.0, 1.0) };
            let im = before.im + s * (after.im - before.im);
            if im.abs() <= guard {
                return Err(Error::Resolution(format!("near-collision at sample {n} (|Im| = {:.3e})", im.abs())));
            }
            let sign = s0 * if im > 0.0 { 1 } else { -1 };
            total += sign;
        }
    }
    Ok(total)
}

/// Signed count of self-crossings of the braid diagram.
pub fn writhe(braid: &Braid) -> Result<i64> {
    let d = braid.strands();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    crossings_between(braid, braid, &pairs, 2.0 * braid.motion_bound())
}

fn check_disjoint(x: &Braid, y: &Braid) -> Result<f64> {
    if x.sample_count() != y.sample_count() || x.period != y.period {
        return Err(Error::Domain("braids must share the sample grid".into()));
    }
    let motion = x.motion_bound().max(y.motion_bound());
    let mut sep = f64::INFINITY;
    for (sx, sy) in x.samples.iter().zip(&y.samples) {
        for a in sx {
            for b in sy {
                sep = sep.min((a - b).norm());
            }
        }
    }
    if sep < MARGIN * motion {
        return Err(Error::Resolution(format!(
            "braids come within {sep:.3e}, below {MARGIN}x the per-step motion {motion:.3e}"
        )));
    }
    Ok(motion)
}

/// Linking number of two disjoint closed braids: half their mutual crossing count.
pub fn linking(x: &Braid, y: &Braid) -> Result<i64> {
    let motion = check_disjoint(x, y)?;
    let pairs: Vec<(usize, usize)> =
        (0..x.strands()).flat_map(|i| (0..y.strands()).map(move |j| (i, j))).collect();
    let c = crossings_between(x, y, &pairs, 2.0 * motion)?;
    if c % 2 != 0 {
        return Err(Error::Resolution(format!("odd mutual crossing count {c}")));
    }
    Ok(c / 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedBraid {
    components: Vec<(Braid, u64)>,
}

impl WeightedBraid {
    pub fn new(components: Vec<(Braid, u64)>) -> Result<Self> {
        if components.iter().any(|c| c.1 == 0) {
            return Err(Error::Domain("multiplicities must be positive".into()));
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                check_disjoint(&components[i].0, &components[j].0)?;
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(Braid, u64)] {
        &self.components
    }

    /// Total strand count `Σ mᵢ dᵢ`.
    pub fn total_strands(&self) -> u64 {
        self.components.iter().map(|(b, m)| m * b.strands() as u64).sum()
    }
}

/// `Σ mᵢ² w(ζᵢ) + Σ_{i≠j} mᵢ mⱼ ℓ(ζᵢ, ζⱼ)`.
pub fn weighted_writhe(wb: &WeightedBraid) -> Result<i64> {
    let c = &wb.components;
    let mut total = 0i64;
    for (b, m) in c {
        total += (m * m) as i64 * writhe(b)?;
    }
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            total += 2 * (c[i].1 * c[j].1) as i64 * linking(&c[i].0, &c[j].0)?;
        }
    }
    Ok(total)
}

/// Replace every component of multiplicity `m` by `m` copies translated by
/// `0, δ, …, (m−1)δ` (constant-framing push-offs) and merge into one braid.
pub fn pushoff_realization(wb: &WeightedBraid, delta: Complex64) -> Result<Braid> {
    let mut parts = Vec::new();
    for (b, m) in &wb.components {
        for k in 0..*m {
            parts.push(b.translated(delta * k as f64));
        }
    }
    Braid::union(&parts)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub expected: i64,
    pub got: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BraidLemmaReport {
    pub a: i64,
    pub b: u64,
    pub checks: Vec<LemmaCheck>,
}

impl BraidLemmaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Radii of the model braids: the inner and outer torus braids and the core.
pub const INNER_RADIUS: f64 = 0.5;
pub const OUTER_RADIUS: f64 = 0.8;

/// Sample count used by [`verify_braid_lemmas`]; four times the constructor
/// minimum keeps the braids at two radii apart by the resolution margin.
pub fn lemma_samples(a: i64, b: u64) -> u64 {
    4 * min_samples(a, b)
}

/// Writhe `a(b−1)` of the `(a,b)` torus braid, its linking `a` with the core,
/// and linking `ab` with a parallel copy at a larger radius.
pub fn verify_braid_lemmas(a: i64, b: u64) -> Result<BraidLemmaReport> {
    let n = lemma_samples(a, b);
    let alpha = torus_braid(a, b, INNER_RADIUS, 0.0, n)?;
    let beta = torus_braid(a, b, OUTER_RADIUS, 0.0, n)?;
    let core = torus_braid(0, 1, 0.0, 0.0, n)?;
    let check = |name, expected: i64, got: i64| LemmaCheck { name, expected, got, pass: expected == got };
    let pair_expected = a * b as i64;
    let checks = vec![
        check("writhe", a * (b as i64 - 1), writhe(&alpha)?),
        check("core_linking", a, linking(&core, &alpha)?),
        check("pair_linking", pair_expected, linking(&alpha, &beta)?),
    ];
    Ok(BraidLemmaReport { a, b, checks })
}
