//! Exact quadratic surds `q0 + q1*sqrt(d)` with a tagged floating fallback.
//!
//! Exact values live in a single real quadratic field `Q(sqrt(d))` with `d`
//! square-free; rationals (`d = 0`) are compatible with every field. Ordering
//! and floor/ceil of exact values are decided with integer arithmetic only.
//! Approximate values carry a midpoint and an error radius and never compare
//! against exact ones.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("values live in different quadratic fields: sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("exact and approximate scalars cannot be compared")]
    MixedComparison,
    #[error("approximate intervals overlap; the ordering is unresolved")]
    Unresolved,
    #[error("division by zero")]
    DivisionByZero,
    #[error("an exact value is required, got an approximate one")]
    NotExact,
    #[error("value does not fit in a 64-bit integer")]
    Overflow,
    #[error("malformed surd literal `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
}

/// Exact element `rational + coeff*sqrt(radicand)` of a real quadratic field.
///
/// The representation is canonical: `radicand` is square-free and greater than
/// one whenever `coeff` is nonzero, and `radicand == 0` otherwise. Structural
/// equality is therefore numerical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: Rational,
    coeff: Rational,
    radicand: u64,
}

fn square_free_split(mut d: u64) -> (u64, u64) {
    let mut outside = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        let sq = p * p;
        while d % sq == 0 {
            d /= sq;
            outside *= p;
        }
        p += 1;
    }
    (outside, d)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Surd {
    pub fn new(rational: Rational, coeff: Rational, radicand: u64) -> Self {
        if coeff.is_zero() || radicand == 0 {
            return Self::from_rational(rational);
        }
        let (outside, inside) = square_free_split(radicand);
        let coeff = coeff * rat(outside as i64);
        if inside == 1 {
            return Self::from_rational(rational + coeff);
        }
        Self { rational, coeff, radicand: inside }
    }

    pub fn from_rational(rational: Rational) -> Self {
        Self { rational, coeff: Rational::zero(), radicand: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    /// `sqrt(d)`, reduced to canonical form (`sqrt(8)` becomes `2*sqrt(2)`).
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    fn common_field(&self, other: &Self) -> Result<u64, ScalarError> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ScalarError::FieldMismatch(d, e)),
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.common_field(other).is_ok()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        Ok(Self::new(&self.rational + &other.rational, &self.coeff + &other.coeff, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        Ok(Self::new(&self.rational - &other.rational, &self.coeff - &other.coeff, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        let dr = rat(d as i64);
        let rational = &self.rational * &other.rational + &self.coeff * &other.coeff * dr;
        let coeff = &self.rational * &other.coeff + &self.coeff * &other.rational;
        Ok(Self::new(rational, coeff, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.common_field(other)?;
        let norm = other.norm();
        let num = self.checked_mul(&other.conjugate())?;
        Ok(Self::new(num.rational / &norm, num.coeff / &norm, num.radicand))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(&self.rational * factor, &self.coeff * factor, self.radicand)
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&rat(factor))
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.rational.clone(), -self.coeff.clone(), self.radicand)
    }

    /// Field norm `q0^2 - q1^2 d`; nonzero for every nonzero surd.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.coeff * &self.coeff * rat(self.radicand as i64)
    }

    pub fn signum(&self) -> i8 {
        let s0 = sign_of(&self.rational);
        let s1 = sign_of(&self.coeff);
        if s1 == 0 || s0 == s1 {
            return if s0 == 0 { s1 } else { s0 };
        }
        if s0 == 0 {
            return s1;
        }
        let lhs = &self.rational * &self.rational;
        let rhs = &self.coeff * &self.coeff * rat(self.radicand as i64);
        // equality is impossible: sqrt(d) is irrational
        if lhs > rhs {
            s0
        } else {
            s1
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Write `self = (p + u*sqrt(d)) / den` with integers and `den > 0`.
    fn integer_form(&self) -> (BigInt, BigInt, BigInt) {
        let den = self.rational.denom().lcm(self.coeff.denom());
        let p = self.rational.numer() * (&den / self.rational.denom());
        let u = self.coeff.numer() * (&den / self.coeff.denom());
        (p, u, den)
    }

    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rational.floor().to_integer();
        }
        let (p, u, den) = self.integer_form();
        let m = &u * &u * BigInt::from(self.radicand);
        let s = m.sqrt();
        // sqrt(m) lies strictly inside (s, s + 1)
        let n = if u.is_positive() { p + s } else { p - s - 1 };
        n.div_floor(&den)
    }

    pub fn ceil(&self) -> BigInt {
        if self.is_rational() {
            return self.rational.ceil().to_integer();
        }
        self.floor() + 1
    }

    /// Rational enclosure `[lo, hi]` of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.rational.clone(), self.rational.clone());
        }
        let scale = BigInt::one() << bits;
        let u = self.coeff.numer();
        let v = self.coeff.denom();
        let m = u * u * BigInt::from(self.radicand) * &scale * &scale;
        let s = m.sqrt();
        let lo_abs = Rational::new(s.clone(), v * &scale);
        let hi_abs = Rational::new(s + 1, v * &scale);
        if self.coeff.is_positive() {
            (&self.rational + lo_abs, &self.rational + hi_abs)
        } else {
            (&self.rational - hi_abs, &self.rational - lo_abs)
        }
    }

    /// Nearest double to the exact value (error below one ulp).
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(80);
        let mid = (lo + hi) / rat(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Doubles `(lo, hi)` certified to bracket the exact value.
    pub fn f64_bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.enclosure(80);
        let lo = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = hi.to_f64().unwrap_or(f64::INFINITY);
        (lo.next_down(), hi.next_up())
    }
}

fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.rational, -self.coeff, self.radicand)
    }
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Surd {
    /// Renders as `q0+q1*sqrt(d)`, or just `q0` for rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.rational, f)?;
        if self.radicand != 0 {
            if self.coeff.is_negative() {
                f.write_str("-")?;
            } else {
                f.write_str("+")?;
            }
            fmt_rational(&self.coeff.abs(), f)?;
            write!(f, "*sqrt({})", self.radicand)?;
        }
        Ok(())
    }
}

/// Floating value with an explicit error radius.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Approx {
    pub value: f64,
    pub radius: f64,
}

impl Approx {
    pub fn new(value: f64, radius: f64) -> Self {
        Self { value, radius: radius.abs() }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.radius
    }

    pub fn upper(&self) -> f64 {
        self.value + self.radius
    }

    fn slack(v: f64) -> f64 {
        v.abs() * f64::EPSILON
    }

    fn add(self, o: Self) -> Self {
        let v = self.value + o.value;
        Self::new(v, self.radius + o.radius + Self::slack(v))
    }

    fn sub(self, o: Self) -> Self {
        let v = self.value - o.value;
        Self::new(v, self.radius + o.radius + Self::slack(v))
    }

    fn mul(self, o: Self) -> Self {
        let v = self.value * o.value;
        let r = self.value.abs() * o.radius + o.value.abs() * self.radius + self.radius * o.radius;
        Self::new(v, r + Self::slack(v))
    }

    fn div(self, o: Self) -> Result<Self, ScalarError> {
        if o.value.abs() <= o.radius || o.value == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        let v = self.value / o.value;
        let r = (self.radius + v.abs() * o.radius) / (o.value.abs() - o.radius);
        Ok(Self::new(v, r + Self::slack(v)))
    }
}

/// A real number used for periods, actions and rotation numbers.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Surd),
    Approx(Approx),
}

impl Scalar {
    pub fn from_integer(n: i64) -> Self {
        Scalar::Exact(Surd::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(Surd::from_ratio(num, den))
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar::Exact(Surd::from_rational(q))
    }

    pub fn sqrt(d: u64) -> Self {
        Scalar::Exact(Surd::sqrt(d))
    }

    pub fn approx(value: f64, radius: f64) -> Self {
        Scalar::Approx(Approx::new(value, radius))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Result<&Surd, ScalarError> {
        match self {
            Scalar::Exact(s) => Ok(s),
            Scalar::Approx(_) => Err(ScalarError::NotExact),
        }
    }

    /// Exact values are converted with a certified enclosure.
    pub fn to_approx(&self) -> Approx {
        match self {
            Scalar::Exact(s) => {
                let (lo, hi) = s.f64_bounds();
                let v = s.to_f64();
                Approx::new(v, (v - lo).max(hi - v))
            }
            Scalar::Approx(a) => *a,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(s) => s.to_f64(),
            Scalar::Approx(a) => a.value,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 0.0,
            Scalar::Approx(a) => a.radius,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(s) => s.is_zero(),
            Scalar::Approx(a) => a.value == 0.0 && a.radius == 0.0,
        }
    }

    fn binary(
        &self,
        other: &Self,
        exact: impl Fn(&Surd, &Surd) -> Result<Surd, ScalarError>,
        approx: impl Fn(Approx, Approx) -> Result<Approx, ScalarError>,
    ) -> Result<Self, ScalarError> {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => exact(x, y).map(Scalar::Exact),
            _ => approx(self.to_approx(), other.to_approx()).map(Scalar::Approx),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binary(other, Surd::checked_add, |a, b| Ok(a.add(b)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binary(other, Surd::checked_sub, |a, b| Ok(a.sub(b)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binary(other, Surd::checked_mul, |a, b| Ok(a.mul(b)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binary(other, Surd::checked_div, Approx::div)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        match self {
            Scalar::Exact(s) => Scalar::Exact(s.scale_int(k)),
            Scalar::Approx(a) => {
                let v = a.value * k as f64;
                Scalar::approx(v, a.radius * (k as f64).abs() + Approx::slack(v))
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        match self {
            Scalar::Exact(s) => Scalar::Exact(s.scale(q)),
            _ => self
                .checked_mul(&Scalar::from_rational(q.clone()))
                .expect("multiplication by a rational cannot fail"),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(s) => Scalar::Exact(s.abs()),
            Scalar::Approx(a) => Scalar::approx(a.value.abs(), a.radius),
        }
    }

    /// Sign of the value; approximate values must exclude zero.
    pub fn signum(&self) -> Result<i8, ScalarError> {
        match self {
            Scalar::Exact(s) => Ok(s.signum()),
            Scalar::Approx(a) if a.lower() > 0.0 => Ok(1),
            Scalar::Approx(a) if a.upper() < 0.0 => Ok(-1),
            Scalar::Approx(_) => Err(ScalarError::Unresolved),
        }
    }

    /// Total order on exact values of one field; disjoint-interval order on
    /// approximate ones; mixed comparisons are rejected.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => x.cmp_exact(y),
            (Scalar::Approx(x), Scalar::Approx(y)) => {
                if x.upper() < y.lower() {
                    Ok(Ordering::Less)
                } else if y.upper() < x.lower() {
                    Ok(Ordering::Greater)
                } else if x == y && x.radius == 0.0 {
                    Ok(Ordering::Equal)
                } else {
                    Err(ScalarError::Unresolved)
                }
            }
            _ => Err(ScalarError::MixedComparison),
        }
    }

    /// Floor, when it is determined: approximate intervals may not contain an integer.
    pub fn floor(&self) -> Result<i64, ScalarError> {
        match self {
            Scalar::Exact(s) => s.floor().to_i64().ok_or(ScalarError::Overflow),
            Scalar::Approx(a) => {
                let f = a.lower().floor();
                if a.upper() >= f + 1.0 || a.lower() == f {
                    return Err(ScalarError::Unresolved);
                }
                Ok(f as i64)
            }
        }
    }

    pub fn ceil(&self) -> Result<i64, ScalarError> {
        match self {
            Scalar::Exact(s) => s.ceil().to_i64().ok_or(ScalarError::Overflow),
            Scalar::Approx(_) => Ok(self.floor()? + 1),
        }
    }

    pub fn is_integer(&self) -> Result<bool, ScalarError> {
        match self {
            Scalar::Exact(s) => Ok(s.as_rational().is_some_and(|q| q.is_integer())),
            Scalar::Approx(_) => self.floor().map(|_| false),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl From<Surd> for Scalar {
    fn from(s: Surd) -> Self {
        Scalar::Exact(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(s) => Scalar::Exact(-s),
            Scalar::Approx(a) => Scalar::approx(-a.value, a.radius),
        }
    }
}

// Operator sugar panics on field mismatch or division by zero, like integer
// division; library code paths that take user input use the checked forms.
macro_rules! scalar_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);
scalar_op!(Div, div, checked_div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(s) => s.fmt(f),
            Scalar::Approx(a) => write!(f, "{}~{:e}", a.value, a.radius),
        }
    }
}

// ---------------------------------------------------------------------------
// Literal parsing: sums of terms, each a product of rationals and square roots.
//   0+1*sqrt(2)   3/2   -1/2*sqrt(8)   1.5e-1   sqrt2
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { literal: self.src.to_string(), reason: reason.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Surd, ScalarError> {
        if self.chars.is_empty() {
            return self.fail("empty literal");
        }
        let raw: Vec<char> = self.src.trim().chars().collect();
        for w in raw.windows(3) {
            if w[0].is_alphanumeric() && w[1].is_whitespace() && w[2].is_alphanumeric() {
                return self.fail("whitespace inside a number");
            }
        }
        let mut total = Surd::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else if first {
                false
            } else {
                return self.fail(format!("expected `+` or `-` at position {}", self.pos));
            };
            first = false;
            let term = self.term()?;
            let term = if negative { -term } else { term };
            total = match total.checked_add(&term) {
                Ok(t) => t,
                Err(e) => return self.fail(e.to_string()),
            };
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<Surd, ScalarError> {
        let mut value = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            value = match value.checked_mul(&f) {
                Ok(v) => v,
                Err(e) => return self.fail(e.to_string()),
            };
        }
        Ok(value)
    }

    fn factor(&mut self) -> Result<Surd, ScalarError> {
        if self.chars[self.pos..].starts_with(&['s', 'q', 'r', 't']) {
            self.pos += 4;
            let parens = self.eat('(');
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let Ok(d) = digits.parse::<u64>() else {
                return self.fail("sqrt needs a non-negative integer radicand");
            };
            if parens && !self.eat(')') {
                return self.fail("unclosed `sqrt(`");
            }
            return Ok(Surd::sqrt(d));
        }
        let num = self.decimal()?;
        if self.eat('/') {
            let den = self.decimal()?;
            if den.is_zero() {
                return self.fail("zero denominator");
            }
            return Ok(Surd::from_rational(num / den));
        }
        Ok(Surd::from_rational(num))
    }

    fn decimal(&mut self) -> Result<Rational, ScalarError> {
        let start = self.pos;
        let mut int_digits = String::new();
        let mut frac_digits = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            int_digits.push(c);
            self.pos += 1;
        }
        if self.eat('.') {
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                frac_digits.push(c);
                self.pos += 1;
            }
        }
        if int_digits.is_empty() && frac_digits.is_empty() {
            return self.fail(format!("expected a number at position {start}"));
        }
        let mut exponent: i32 = 0;
        if self.peek() == Some('e') || self.peek() == Some('E') {
            self.pos += 1;
            let neg = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            let es = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[es..self.pos].iter().collect();
            let Ok(e) = digits.parse::<i32>() else {
                return self.fail("malformed exponent");
            };
            exponent = if neg { -e } else { e };
        }
        let mantissa: BigInt = format!("{int_digits}{frac_digits}0").parse::<BigInt>().unwrap() / 10;
        let shift = exponent - frac_digits.len() as i32;
        let ten = BigInt::from(10);
        Ok(if shift >= 0 {
            Rational::from_integer(mantissa * num_traits::pow(ten, shift as usize))
        } else {
            Rational::new(mantissa, num_traits::pow(ten, (-shift) as usize))
        })
    }
}

impl FromStr for Surd {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).sum()
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<Surd>().map(Scalar::Exact)
    }
}
