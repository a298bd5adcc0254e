//! Two-orbit model data: periods, rotation numbers and framing data of the two
//! simple Reeb orbits of a lens space, measured in a fixed trivialization.

pub mod scalar;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};
pub use scalar::{Approx, Rational, Scalar, ScalarError, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitId {
    One,
    Two,
}

impl OrbitId {
    pub fn index(self) -> usize {
        match self {
            OrbitId::One => 0,
            OrbitId::Two => 1,
        }
    }

    pub fn other(self) -> Self {
        match self {
            OrbitId::One => OrbitId::Two,
            OrbitId::Two => OrbitId::One,
        }
    }
}

impl TryFrom<u8> for OrbitId {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(OrbitId::One),
            2 => Ok(OrbitId::Two),
            _ => Err(Error::Domain(format!("orbit id must be 1 or 2, got {v}"))),
        }
    }
}

/// Finite set of (orbit, positive multiplicity) pairs, one entry per orbit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitSet {
    entries: Vec<(OrbitId, u64)>,
}

impl OrbitSet {
    pub fn new(entries: impl IntoIterator<Item = (OrbitId, u64)>) -> Result<Self> {
        let mut out: Vec<(OrbitId, u64)> = Vec::new();
        for (id, m) in entries {
            if m == 0 {
                return Err(Error::Domain(format!("multiplicity of orbit {id:?} must be positive")));
            }
            if out.iter().any(|(j, _)| *j == id) {
                return Err(Error::Domain(format!("orbit {id:?} listed twice")));
            }
            out.push((id, m));
        }
        out.sort();
        Ok(Self { entries: out })
    }

    /// The orbit set `γ1^m1 γ2^m2`; zero multiplicities are omitted.
    pub fn from_multiplicities(m1: u64, m2: u64) -> Self {
        let entries = [(OrbitId::One, m1), (OrbitId::Two, m2)].into_iter().filter(|e| e.1 > 0).collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[(OrbitId, u64)] {
        &self.entries
    }

    pub fn multiplicity(&self, id: OrbitId) -> u64 {
        self.entries.iter().find(|(j, _)| *j == id).map_or(0, |e| e.1)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Orbit data in a fixed trivialization τ.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitData {
    pub period: Scalar,
    pub theta: Scalar,
    pub q: Rational,
    pub c: Rational,
}

impl OrbitData {
    /// Rotation number relative to the Seifert framing, `Q + θ`.
    pub fn phi(&self) -> Scalar {
        self.theta.checked_add(&Scalar::from_rational(self.q.clone())).expect("rational shift never mismatches fields")
    }

    pub fn self_linking(&self) -> Rational {
        &self.q - &self.c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoOrbitModel {
    p: u64,
    h: [u64; 2],
    orbits: [OrbitData; 2],
    ell: Rational,
}

impl TwoOrbitModel {
    pub fn new(p: u64, h: [u64; 2], orbits: [OrbitData; 2], ell: Rational) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("p must be positive".into()));
        }
        for (i, o) in orbits.iter().enumerate() {
            if o.period.signum()? <= 0 {
                return Err(Error::Domain(format!("period T{} must be positive, got {}", i + 1, o.period)));
            }
        }
        let model = Self { p, h: [h[0] % p, h[1] % p], orbits, ell };
        let l1l2 = model.l(OrbitId::One) * model.l(OrbitId::Two);
        let den = model.ell.denom();
        if !(num_bigint::BigInt::from(l1l2) % den).is_zero() {
            return Err(Error::InconsistentModel(format!(
                "denominator of ell = {} does not divide l1*l2 = {l1l2}",
                model.ell
            )));
        }
        Ok(model)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self, id: OrbitId) -> u64 {
        self.h[id.index()]
    }

    /// Order of the homology class of the orbit, `p / gcd(h, p)`.
    pub fn l(&self, id: OrbitId) -> u64 {
        self.p / self.h(id).gcd(&self.p)
    }

    pub fn orbit(&self, id: OrbitId) -> &OrbitData {
        &self.orbits[id.index()]
    }

    pub fn period(&self, id: OrbitId) -> &Scalar {
        &self.orbit(id).period
    }

    pub fn theta(&self, id: OrbitId) -> &Scalar {
        &self.orbit(id).theta
    }

    pub fn phi(&self, id: OrbitId) -> Scalar {
        self.orbit(id).phi()
    }

    pub fn ell(&self) -> &Rational {
        &self.ell
    }

    pub fn admissible(&self, m1: u64, m2: u64) -> bool {
        admissible(self, m1, m2)
    }

    /// Same orbits with the homology data replaced (`ell` is kept).
    pub fn with_homology(&self, p: u64, h1: u64, h2: u64) -> Result<Self> {
        Self::new(p, [h1, h2], self.orbits.clone(), self.ell.clone())
    }

    /// Same orbits with orbit 1 and orbit 2 exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.p,
            h: [self.h[1], self.h[0]],
            orbits: [self.orbits[1].clone(), self.orbits[0].clone()],
            ell: self.ell.clone(),
        }
    }

    /// Change the trivialization along one orbit by `s` full twists:
    /// θ ↦ θ + s, Q ↦ Q − s, c ↦ c − s. The ECH index, φ and sl are unchanged.
    pub fn reframe(&self, id: OrbitId, s: i64) -> Self {
        let mut out = self.clone();
        let o = &mut out.orbits[id.index()];
        let shift = Rational::from_integer(s.into());
        o.theta = o.theta.checked_add(&Scalar::from_integer(s)).expect("integer shift never mismatches fields");
        o.q = &o.q - &shift;
        o.c = &o.c - &shift;
        out
    }
}

pub fn admissible(model: &TwoOrbitModel, m1: u64, m2: u64) -> bool {
    let p = model.p as u128;
    let r = (m1 as u128 % p) * model.h[0] as u128 + (m2 as u128 % p) * model.h[1] as u128;
    r % p == 0
}

/// Boundary of the ellipsoid `E(a,b)` with its two coordinate circles, in the
/// trivialization that extends over the spanning disks.
pub fn make_ellipsoid_model(a: &Scalar, b: &Scalar) -> Result<TwoOrbitModel> {
    for (name, v) in [("a", a), ("b", b)] {
        match v.signum() {
            Ok(1) => {}
            _ => return Err(Error::Domain(format!("ellipsoid parameter {name} must be positive, got {v}"))),
        }
    }
    let orbit = |period: &Scalar, theta: Scalar| OrbitData {
        period: period.clone(),
        theta,
        q: Rational::zero(),
        c: Rational::one(),
    };
    let o1 = orbit(a, a.checked_div(b)?);
    let o2 = orbit(b, b.checked_div(a)?);
    TwoOrbitModel::new(1, [0, 0], [o1, o2], Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn ellipsoid_one_sqrt2() {
        let m = make_ellipsoid_model(&sc("1"), &sc("0+1*sqrt(2)")).unwrap();
        assert_eq!(m.phi(OrbitId::One), sc("1/2*sqrt(2)"));
        assert_eq!(m.phi(OrbitId::Two), sc("sqrt(2)"));
        assert_eq!(m.ell(), &Rational::one());
        assert_eq!(m.p(), 1);
    }

    #[test]
    fn ellipsoid_symmetric_and_rational() {
        let m = make_ellipsoid_model(&sc("1"), &sc("1")).unwrap();
        assert_eq!(m.phi(OrbitId::One), sc("1"));
        assert_eq!(m.phi(OrbitId::Two), sc("1"));
        let m = make_ellipsoid_model(&sc("2"), &sc("3")).unwrap();
        assert_eq!(m.phi(OrbitId::One), sc("2/3"));
        assert_eq!(m.phi(OrbitId::Two), sc("3/2"));
        let vol = m.period(OrbitId::One) * m.period(OrbitId::Two);
        assert_eq!(vol, sc("6"));
    }

    #[test]
    fn ellipsoid_rejects_nonpositive() {
        assert!(make_ellipsoid_model(&sc("0"), &sc("1")).is_err());
        assert!(make_ellipsoid_model(&sc("1"), &sc("1-1*sqrt(2)")).is_err());
    }

    #[test]
    fn admissibility() {
        let e = make_ellipsoid_model(&sc("1"), &sc("sqrt(2)")).unwrap();
        assert!(e.admissible(3, 5));
        let m = e.with_homology(2, 1, 1).unwrap();
        assert!(m.admissible(1, 1));
        assert!(!m.admissible(1, 2));
        assert!(m.admissible(0, 0));
        assert_eq!(m.l(OrbitId::One), 2);
    }

    #[test]
    fn linking_denominator_checked() {
        let e = make_ellipsoid_model(&sc("1"), &sc("sqrt(2)")).unwrap();
        let orbits = [e.orbit(OrbitId::One).clone(), e.orbit(OrbitId::Two).clone()];
        let half = Rational::new(1.into(), 2.into());
        assert!(TwoOrbitModel::new(1, [0, 0], orbits.clone(), half.clone()).is_err());
        assert!(TwoOrbitModel::new(2, [1, 1], orbits.clone(), half.clone()).is_ok());
        let quarter = Rational::new(1.into(), 4.into());
        assert!(TwoOrbitModel::new(2, [1, 1], orbits, quarter).is_ok());
    }

    #[test]
    fn swap_matches_reversed_constructor() {
        let a = sc("2");
        let b = sc("3/2*sqrt(3)");
        let m = make_ellipsoid_model(&a, &b).unwrap();
        assert_eq!(m.swapped(), make_ellipsoid_model(&b, &a).unwrap());
    }

    #[test]
    fn reframe_preserves_phi_and_self_linking() {
        let m = make_ellipsoid_model(&sc("1"), &sc("sqrt(2)")).unwrap();
        let r = m.reframe(OrbitId::One, 1);
        assert_eq!(r.phi(OrbitId::One), m.phi(OrbitId::One));
        assert_eq!(r.orbit(OrbitId::One).self_linking(), Rational::from_integer((-1).into()));
        assert_eq!(r.theta(OrbitId::One), &sc("1+1/2*sqrt(2)"));
    }

    #[test]
    fn orbit_sets() {
        assert!(OrbitSet::new([(OrbitId::One, 0)]).is_err());
        assert!(OrbitSet::new([(OrbitId::One, 1), (OrbitId::One, 2)]).is_err());
        let s = OrbitSet::new([(OrbitId::Two, 3), (OrbitId::One, 1)]).unwrap();
        assert_eq!(s.entries(), &[(OrbitId::One, 1), (OrbitId::Two, 3)]);
        assert_eq!(OrbitSet::from_multiplicities(0, 2).multiplicity(OrbitId::One), 0);
        assert!(OrbitSet::from_multiplicities(0, 0).is_empty());
    }
}
