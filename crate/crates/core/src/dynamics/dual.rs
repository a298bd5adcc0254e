//! Forward-mode dual numbers in four directions. Nesting `Dual<Dual<f64>>`
//! yields exact second derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    fn sqrt(self) -> Self;
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub v: T,
    pub d: [T; 4],
}

impl<T: Real> Dual<T> {
    pub fn var(v: T, i: usize) -> Self {
        let mut d = [T::cst(0.0); 4];
        d[i] = T::cst(1.0);
        Self { v, d }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { v: self.v + o.v, d: std::array::from_fn(|i| self.d[i] + o.d[i]) }
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { v: self.v - o.v, d: std::array::from_fn(|i| self.d[i] - o.d[i]) }
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { v: self.v * o.v, d: std::array::from_fn(|i| self.d[i] * o.v + self.v * o.d[i]) }
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let v = self.v / o.v;
        Self { v, d: std::array::from_fn(|i| (self.d[i] - v * o.d[i]) / o.v) }
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, d: self.d.map(|x| -x) }
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(v: f64) -> Self {
        Self { v: T::cst(v), d: [T::cst(0.0); 4] }
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let two_s = s + s;
        Self { v: s, d: self.d.map(|x| x / two_s) }
    }
}

/// Value and gradient of `f` at `x`.
pub fn gradient(f: impl Fn([Dual<f64>; 4]) -> Dual<f64>, x: [f64; 4]) -> (f64, [f64; 4]) {
    let r = f(std::array::from_fn(|i| Dual::var(x[i], i)));
    (r.v, r.d)
}

/// Value, gradient and Hessian of `f` at `x`.
pub fn hessian(f: impl Fn([Dual<Dual<f64>>; 4]) -> Dual<Dual<f64>>, x: [f64; 4]) -> (f64, [f64; 4], [[f64; 4]; 4]) {
    let args = std::array::from_fn(|i| Dual { v: Dual::var(x[i], i), d: std::array::from_fn(|j| Dual::cst(if i == j { 1.0 } else { 0.0 })) });
    let r = f(args);
    let hess = std::array::from_fn(|i| std::array::from_fn(|j| r.d[j].d[i]));
    (r.v.v, r.v.d, hess)
}
