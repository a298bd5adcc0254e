//! Star-shaped bodies in C² = R⁴ given by a degree-2 homogeneous defining
//! function `H`; the hypersurface is `H = 1`.
//!
//! `H = (π|z1|²/a + π|z2|²/b)·(1 + ε·g(z/|z|))` where `g` is a sum of harmonics
//! `Re` or `Im` of `u1^k1 u2^k2`, `u = z/|z|` (negative powers use the
//! conjugate). In angular coordinates `z = |z|(cos η e^{it1}, sin η e^{it2})`
//! such a harmonic is `cos^{|k1|}η sin^{|k2|}η cos(k1 t1 + k2 t2)` (or `sin`),
//! so `g` is smooth on the sphere.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::dual::{gradient, hessian, Real};
use crate::model::Scalar;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Harmonic {
    pub coeff: f64,
    pub trig: Trig,
    pub k1: i32,
    pub k2: i32,
}

impl Harmonic {
    fn eval<T: Real>(&self, u1: (T, T), u2: (T, T)) -> T {
        let mul = |p: (T, T), q: (T, T)| (p.0 * q.0 - p.1 * q.1, p.0 * q.1 + p.1 * q.0);
        let mut acc = (T::cst(1.0), T::cst(0.0));
        for (u, k) in [(u1, self.k1), (u2, self.k2)] {
            let f = if k >= 0 { u } else { (u.0, -u.1) };
            for _ in 0..k.unsigned_abs() {
                acc = mul(acc, f);
            }
        }
        let v = match self.trig {
            Trig::Cos => acc.0,
            Trig::Sin => acc.1,
        };
        T::cst(self.coeff) * v
    }

    /// The same harmonic evaluated in angular coordinates.
    pub fn eval_angles(&self, eta: f64, t1: f64, t2: f64) -> f64 {
        let amp = eta.cos().powi(self.k1.abs()) * eta.sin().powi(self.k2.abs());
        let phase = self.k1 as f64 * t1 + self.k2 as f64 * t2;
        self.coeff
            * amp
            * match self.trig {
                Trig::Cos => phase.cos(),
                Trig::Sin => phase.sin(),
            }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StarBody {
    a: Scalar,
    b: Scalar,
    af: f64,
    bf: f64,
    eps: f64,
    terms: Vec<Harmonic>,
}

impl StarBody {
    pub fn ellipsoid(a: Scalar, b: Scalar) -> Result<Self> {
        Self::perturbed(a, b, 0.0, Vec::new())
    }

    pub fn perturbed(a: Scalar, b: Scalar, eps: f64, terms: Vec<Harmonic>) -> Result<Self> {
        let (af, bf) = (a.to_f64(), b.to_f64());
        if !(af > 0.0 && bf > 0.0 && af.is_finite() && bf.is_finite()) {
            return Err(Error::Domain(format!("ellipsoid parameters must be positive, got {a}, {b}")));
        }
        let amplitude: f64 = terms.iter().map(|t| t.coeff.abs()).sum::<f64>() * eps.abs();
        if !(amplitude < 1.0) || !eps.is_finite() {
            return Err(Error::Domain(format!("perturbation amplitude {amplitude} must be below 1 to keep H positive")));
        }
        Ok(Self { a, b, af, bf, eps, terms })
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn terms(&self) -> &[Harmonic] {
        &self.terms
    }

    pub fn is_ellipsoid(&self) -> bool {
        self.eps == 0.0 || self.terms.is_empty()
    }

    /// `g` evaluated at `u = z/|z|`.
    fn g<T: Real>(&self, x: [T; 4]) -> T {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
        let u1 = (x[0] / r, x[1] / r);
        let u2 = (x[2] / r, x[3] / r);
        self.terms.iter().fold(T::cst(0.0), |acc, t| acc + t.eval(u1, u2))
    }

    /// The defining function at `(x1, y1, x2, y2)`.
    pub fn h<T: Real>(&self, x: [T; 4]) -> T {
        let h0 = T::cst(PI / self.af) * (x[0] * x[0] + x[1] * x[1]) + T::cst(PI / self.bf) * (x[2] * x[2] + x[3] * x[3]);
        if self.is_ellipsoid() {
            return h0;
        }
        h0 * (T::cst(1.0) + T::cst(self.eps) * self.g(x))
    }

    pub fn value(&self, x: [f64; 4]) -> f64 {
        self.h(x)
    }

    pub fn gradient(&self, x: [f64; 4]) -> [f64; 4] {
        gradient(|y| self.h(y), x).1
    }

    pub fn hessian(&self, x: [f64; 4]) -> [[f64; 4]; 4] {
        hessian(|y| self.h(y), x).2
    }

    /// `H` at the sphere point with split angle `eta` and circle angles `t1`, `t2`.
    pub fn value_on_sphere(&self, eta: f64, t1: f64, t2: f64) -> f64 {
        let (c, s) = (eta.cos(), eta.sin());
        let h0 = PI * (c * c / self.af + s * s / self.bf);
        let g: f64 = self.terms.iter().map(|t| t.eval_angles(eta, t1, t2)).sum();
        h0 * (1.0 + self.eps * g)
    }
}

impl fmt::Display for Harmonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.trig {
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        };
        write!(f, "{}*{name}({}*t1{:+}*t2)", self.coeff, self.k1, self.k2)
    }
}

impl fmt::Display for StarBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ellipsoid:{},{}", self.a, self.b)?;
        if !self.terms.is_empty() {
            write!(f, ";perturb:{},", self.eps)?;
            for (i, t) in self.terms.iter().enumerate() {
                if i > 0 && t.coeff >= 0.0 {
                    f.write_str("+")?;
                }
                write!(f, "{t}")?;
            }
        }
        Ok(())
    }
}

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn parse_scalar(s: &str) -> Result<Scalar> {
    s.trim().parse::<Scalar>().map_err(|e| Error::Parse(e.to_string()))
}

/// `k1*t1 + k2*t2` with integer coefficients; either part may be missing.
fn parse_phase(src: &str) -> Result<(i32, i32)> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return perr("empty harmonic argument");
    }
    let mut k = [0i32; 2];
    let mut seen = [false; 2];
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if rest.len() == s.len() => (1, rest),
            _ => return perr(format!("expected `+` or `-` in `{src}`")),
        };
        if body.is_empty() {
            return perr(format!("dangling sign in `{src}`"));
        }
        let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
        let term = &body[..end];
        rest = &body[end..];
        let (coef, var) = match term.rsplit_once('*') {
            Some((c, v)) => (c, v),
            None => {
                let split = term.find('t').unwrap_or(term.len());
                (&term[..split], &term[split..])
            }
        };
        let idx = match var {
            "t1" => 0,
            "t2" => 1,
            _ => return perr(format!("unknown angle `{var}` in `{src}`, expected t1 or t2")),
        };
        let c: i32 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| Error::Parse(format!("non-integer frequency `{coef}` in `{src}`")))?
        };
        if std::mem::replace(&mut seen[idx], true) {
            return perr(format!("angle {var} repeated in `{src}`"));
        }
        k[idx] = sign * c;
    }
    Ok((k[0], k[1]))
}

/// A sum like `cos(2*t1-2*t2) + 0.5*sin(2*t2)`.
pub fn parse_harmonics(src: &str) -> Result<Vec<Harmonic>> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut pieces = Vec::new();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start && !matches!(bytes[i - 1], b'e' | b'E' | b'*') => {
                pieces.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    pieces.push(&s[start..]);
    for piece in pieces {
        let (sign, body) = match piece.strip_prefix('-') {
            Some(b) => (-1.0, b),
            None => (1.0, piece.strip_prefix('+').unwrap_or(piece)),
        };
        let Some(open) = body.find('(') else {
            return perr(format!("harmonic `{piece}` needs cos(...) or sin(...)"));
        };
        if !body.ends_with(')') {
            return perr(format!("unbalanced parentheses in `{piece}`"));
        }
        let head = &body[..open];
        let (coef, name) = match head.rsplit_once('*') {
            Some((c, n)) => (c.parse::<f64>().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?, n),
            None => (1.0, head),
        };
        let trig = match name {
            "cos" => Trig::Cos,
            "sin" => Trig::Sin,
            _ => return perr(format!("unknown function `{name}`, expected cos or sin")),
        };
        let (k1, k2) = parse_phase(&body[open + 1..body.len() - 1])?;
        terms.push(Harmonic { coeff: sign * coef, trig, k1, k2 });
    }
    Ok(terms)
}

impl FromStr for StarBody {
    type Err = Error;

    /// `ellipsoid:a,b` or `ellipsoid:a,b;perturb:eps,g`.
    fn from_str(src: &str) -> Result<Self> {
        let src = src.trim();
        let (ell, pert) = match src.split_once(';') {
            Some((e, p)) => (e, Some(p)),
            None => (src, None),
        };
        let Some(params) = ell.trim().strip_prefix("ellipsoid:") else {
            return perr(format!("body must start with `ellipsoid:`, got `{src}`"));
        };
        let Some((a, b)) = params.split_once(',') else {
            return perr("ellipsoid needs two parameters `a,b`");
        };
        let (a, b) = (parse_scalar(a)?, parse_scalar(b)?);
        let Some(pert) = pert else {
            return Self::ellipsoid(a, b);
        };
        let Some(p) = pert.trim().strip_prefix("perturb:") else {
            return perr(format!("expected `perturb:eps,g` after `;`, got `{pert}`"));
        };
        let Some((eps, g)) = p.split_once(',') else {
            return perr("perturbation needs `eps,g`");
        };
        let eps: f64 = eps.trim().parse().map_err(|_| Error::Parse(format!("bad epsilon `{eps}`")))?;
        Self::perturbed(a, b, eps, parse_harmonics(g)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bodies() {
        let e: StarBody = "ellipsoid:1,sqrt2".parse().unwrap();
        assert_eq!(e.a(), &Scalar::from_integer(1));
        assert_eq!(e.b(), &Scalar::sqrt(2));
        assert!(e.is_ellipsoid());
        let p: StarBody = "ellipsoid:1,0+1*sqrt(2);perturb:1e-3,cos(2*t1-2*t2)+0.5*sin(2t2)".parse().unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.terms()[0], Harmonic { coeff: 1.0, trig: Trig::Cos, k1: 2, k2: -2 });
        assert_eq!(p.terms()[1], Harmonic { coeff: 0.5, trig: Trig::Sin, k1: 0, k2: 2 });
        let back: StarBody = p.to_string().parse().unwrap();
        assert_eq!(back, p);
        let q: StarBody = "ellipsoid:2,3;perturb:0.01,cos(2*t1)-0.25*sin(4*t2-2*t1)".parse().unwrap();
        assert_eq!(q.to_string().parse::<StarBody>().unwrap(), q);
        let neg = parse_harmonics("-2*cos(t1)-sin(-3*t2+t1)").unwrap();
        assert_eq!(neg[0].coeff, -2.0);
        assert_eq!((neg[1].coeff, neg[1].k1, neg[1].k2), (-1.0, 1, -3));
    }

    #[test]
    fn rejects_bad_bodies() {
        for bad in [
            "sphere:1",
            "ellipsoid:1",
            "ellipsoid:0,1",
            "ellipsoid:1,2;perturb:0.1",
            "ellipsoid:1,2;perturb:0.1,tan(t1)",
            "ellipsoid:1,2;perturb:0.1,cos(t3)",
            "ellipsoid:1,2;perturb:0.1,cos(1.5*t1)",
            "ellipsoid:1,2;perturb:2,cos(2*t1)",
        ] {
            assert!(bad.parse::<StarBody>().is_err(), "{bad}");
        }
    }

    #[test]
    fn harmonics_agree_with_angular_form() {
        let body: StarBody = "ellipsoid:1,2;perturb:0.1,cos(2*t1-2*t2)+0.3*sin(3*t1+2*t2)-0.2*cos(-4*t2)".parse().unwrap();
        for &(eta, t1, t2, r) in &[(0.3f64, 1.0f64, -2.0f64, 1.7f64), (1.2, 4.0, 0.5, 0.4), (0.01, 2.2, 3.3, 1.0)] {
            let x = [r * eta.cos() * f64::cos(t1), r * eta.cos() * f64::sin(t1), r * eta.sin() * f64::cos(t2), r * eta.sin() * f64::sin(t2)];
            let direct = body.value(x);
            let angular = r * r * body.value_on_sphere(eta, t1, t2);
            assert!((direct - angular).abs() < 1e-13 * direct, "{direct} vs {angular}");
        }
    }

    #[test]
    fn homogeneous_of_degree_two() {
        let body: StarBody = "ellipsoid:2,3;perturb:0.05,cos(2*t1+2*t2)+sin(4*t1)".parse().unwrap();
        let x = [0.3, -0.7, 0.2, 0.9];
        for t in [0.1, 2.0, 17.0] {
            let y = x.map(|v| v * t);
            assert!((body.value(y) - t * t * body.value(x)).abs() <= 1e-12 * body.value(y));
        }
    }
}
