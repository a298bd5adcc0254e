//! Conley–Zehnder and ECH index arithmetic for two-orbit models, and the
//! relations tying volume, periods and Seifert rotation numbers together.

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::model::{OrbitId, Rational, Scalar, ScalarError, TwoOrbitModel};
use crate::{Error, Result};

/// `⌊θ⌋ + ⌈θ⌉`, also for integer θ.
pub fn cz(theta: &Scalar) -> Result<i64> {
    let unresolved = |e: ScalarError| match e {
        ScalarError::Unresolved => Error::UnresolvableCz(theta.to_string()),
        other => Error::from(other),
    };
    let f = theta.floor().map_err(unresolved)?;
    let c = theta.ceil().map_err(unresolved)?;
    Ok(f + c)
}

/// `Σ_{k=1..m} cz(kθ)`.
pub fn cz_total(theta: &Scalar, m: u64) -> Result<i64> {
    let mut total = 0i64;
    for k in 1..=m {
        let k = i64::try_from(k).map_err(|_| ScalarError::Overflow)?;
        total += cz(&theta.scale_int(k))?;
    }
    Ok(total)
}

/// ECH index of `γ1^m1 γ2^m2` relative to the empty set.
pub fn ech_index(model: &TwoOrbitModel, m1: u64, m2: u64) -> Result<i64> {
    if !model.admissible(m1, m2) {
        return Err(Error::Inadmissible { m1, m2, p: model.p() });
    }
    let mut topological = Rational::from_integer((2 * m1 * m2).into()) * model.ell();
    for (id, m) in [(OrbitId::One, m1), (OrbitId::Two, m2)] {
        let o = model.orbit(id);
        let m = Rational::from_integer(m.into());
        topological += &m * &o.c + &m * &m * &o.q;
    }
    if !topological.is_integer() {
        return Err(Error::InconsistentModel(format!(
            "relative Chern class plus intersection pairing of ({m1},{m2}) is {topological}, not an integer"
        )));
    }
    let topological = topological.to_integer().to_i64().ok_or(ScalarError::Overflow)?;
    let cz1 = cz_total(model.theta(OrbitId::One), m1)?;
    let cz2 = cz_total(model.theta(OrbitId::Two), m2)?;
    Ok(topological + cz1 + cz2)
}

/// `φ1 m1² + φ2 m2² + 2ℓ m1 m2`, the quadratic part of the index.
pub fn index_quadratic_part(model: &TwoOrbitModel, m1: u64, m2: u64) -> Result<Scalar> {
    let sq = |m: u64| Rational::from_integer((m as u128 * m as u128).into());
    let q1 = model.phi(OrbitId::One).scale(&sq(m1));
    let q2 = model.phi(OrbitId::Two).scale(&sq(m2));
    let cross = Scalar::from_rational(model.ell() * Rational::from_integer((2 * m1 as u128 * m2 as u128).into()));
    Ok(q1.checked_add(&q2)?.checked_add(&cross)?)
}

/// `ech_index(m1,m2)` minus its quadratic part.
pub fn index_quadratic_defect(model: &TwoOrbitModel, m1: u64, m2: u64) -> Result<Scalar> {
    let index = ech_index(model, m1, m2)?;
    Ok(Scalar::from_integer(index).checked_sub(&index_quadratic_part(model, m1, m2)?)?)
}

/// Upper bound `Σ mᵢ(|cᵢ| + |θᵢ| + 1)` on `|index_quadratic_defect|`.
///
/// The defect equals `Σ mᵢ(cᵢ + θᵢ) + Σ eₖ` where every CZ summand contributes
/// one rounding error `|eₖ| ≤ 1`.
pub fn quadratic_defect_bound(model: &TwoOrbitModel, m1: u64, m2: u64) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (id, m) in [(OrbitId::One, m1), (OrbitId::Two, m2)] {
        let o = model.orbit(id);
        let per = o.theta.abs().checked_add(&Scalar::from_rational(o.c.abs() + Rational::one()))?;
        total = total.checked_add(&per.scale(&Rational::from_integer(m.into())))?;
    }
    Ok(total)
}

/// `sl = Q − c`.
pub fn self_linking(q: &Rational, c: &Rational) -> Rational {
    q - c
}

/// Rotation number in the Seifert framing, `θ + sl`.
pub fn seifert_rotation(theta: &Scalar, sl: &Rational) -> Scalar {
    theta.checked_add(&Scalar::from_rational(sl.clone())).expect("rational shift never mismatches fields")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub id: &'static str,
    #[serde(serialize_with = "ser_display")]
    pub left: Scalar,
    #[serde(serialize_with = "ser_display")]
    pub right: Scalar,
    /// Certified upper bound on `|left − right|`.
    pub deviation: f64,
    pub pass: bool,
}

fn ser_display<S: serde::Serializer>(v: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub tol: f64,
    pub relations: Vec<Relation>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.relations.iter().map(|r| r.deviation).fold(0.0, f64::max)
    }

    pub fn get(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id == id)
    }
}

pub const RELATION_IDS: [&str; 6] =
    ["vol-pT1T2", "vol-T1^2/phi1", "vol-T2^2/phi2", "phi1-ell*T1/T2", "phi2-ell*T2/T1", "phi1*phi2-ell^2"];

fn relation(id: &'static str, left: Scalar, right: Scalar, tol: f64) -> Result<Relation> {
    let diff = left.checked_sub(&right)?.abs();
    let deviation = match &diff {
        Scalar::Exact(s) if s.is_zero() => 0.0,
        Scalar::Exact(s) => s.f64_bounds().1,
        Scalar::Approx(a) => a.upper(),
    };
    Ok(Relation { id, left, right, deviation, pass: deviation <= tol })
}

/// Residuals of the six volume/period/rotation relations of a lens-space model.
pub fn check_relations(vol: &Scalar, model: &TwoOrbitModel, tol: f64) -> Result<RelationReport> {
    if vol.signum()? <= 0 {
        return Err(Error::Domain(format!("volume must be positive, got {vol}")));
    }
    let t1 = model.period(OrbitId::One);
    let t2 = model.period(OrbitId::Two);
    let phi1 = model.phi(OrbitId::One);
    let phi2 = model.phi(OrbitId::Two);
    let ell = Scalar::from_rational(model.ell().clone());
    let p = Scalar::from_integer(model.p() as i64);
    let rhs = [
        p.checked_mul(t1)?.checked_mul(t2)?,
        t1.checked_mul(t1)?.checked_div(&phi1)?,
        t2.checked_mul(t2)?.checked_div(&phi2)?,
    ];
    let mut relations = Vec::with_capacity(6);
    for (id, r) in RELATION_IDS[..3].iter().zip(rhs) {
        relations.push(relation(id, vol.clone(), r, tol)?);
    }
    relations.push(relation(RELATION_IDS[3], phi1.clone(), ell.checked_mul(t1)?.checked_div(t2)?, tol)?);
    relations.push(relation(RELATION_IDS[4], phi2.clone(), ell.checked_mul(t2)?.checked_div(t1)?, tol)?);
    relations.push(relation(RELATION_IDS[5], phi1.checked_mul(&phi2)?, ell.checked_mul(&ell)?, tol)?);
    Ok(RelationReport { tol, relations })
}
