//! Differential forms in the two chart coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::{BiPoly, Field, RatFunc};
use crate::error::{Error, Result};

/// `p dx + q dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<F> {
    pub p: RatFunc<F>,
    pub q: RatFunc<F>,
}

/// `r dx∧dy`; orientation is fixed by `dy∧dx = -dx∧dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<F> {
    pub r: RatFunc<F>,
}

/// Polynomial substitution `(x, y) <- (x(s, t), y(s, t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap<F> {
    pub x: BiPoly<F>,
    pub y: BiPoly<F>,
}

impl<F: Field> PolyMap<F> {
    pub fn identity() -> Self {
        PolyMap { x: BiPoly::x(), y: BiPoly::y() }
    }

    /// First blow-up chart `(x, t) ↦ (x, t x)`.
    pub fn blowup_chart1() -> Self {
        PolyMap { x: BiPoly::x(), y: BiPoly::monomial(F::one(), 1, 1) }
    }

    /// Second blow-up chart `(u, y) ↦ (u y, y)`.
    pub fn blowup_chart2() -> Self {
        PolyMap { x: BiPoly::monomial(F::one(), 1, 1), y: BiPoly::y() }
    }

    /// `self ∘ inner`.
    pub fn then(&self, inner: &Self) -> Self {
        PolyMap { x: self.x.compose(&inner.x, &inner.y), y: self.y.compose(&inner.x, &inner.y) }
    }

    pub fn jacobian(&self) -> BiPoly<F> {
        &(&self.x.partial_x() * &self.y.partial_y()) - &(&self.x.partial_y() * &self.y.partial_x())
    }
}

impl<F: Field> OneForm<F> {
    pub fn new(p: RatFunc<F>, q: RatFunc<F>) -> Self {
        OneForm { p, q }
    }

    pub fn from_polys(a: BiPoly<F>, b: BiPoly<F>) -> Self {
        OneForm { p: a.into(), q: b.into() }
    }

    pub fn zero() -> Self {
        OneForm { p: RatFunc::zero(), q: RatFunc::zero() }
    }

    pub fn dx() -> Self {
        OneForm { p: RatFunc::one(), q: RatFunc::zero() }
    }

    pub fn dy() -> Self {
        OneForm { p: RatFunc::zero(), q: RatFunc::one() }
    }

    /// `df` for a rational function `f`.
    pub fn differential(f: &RatFunc<F>) -> Self {
        OneForm { p: f.partial_x(), q: f.partial_y() }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn scale(&self, f: &RatFunc<F>) -> Self {
        OneForm { p: &self.p * f, q: &self.q * f }
    }

    /// Both coefficients as polynomials, if they are.
    pub fn as_polynomials(&self) -> Option<(BiPoly<F>, BiPoly<F>)> {
        Some((self.p.as_polynomial()?, self.q.as_polynomial()?))
    }

    pub fn swap_vars(&self) -> Self {
        OneForm { p: self.q.swap_vars(), q: self.p.swap_vars() }
    }
}

impl<F: Field> TwoForm<F> {
    pub fn new(r: RatFunc<F>) -> Self {
        TwoForm { r }
    }

    pub fn zero() -> Self {
        TwoForm { r: RatFunc::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn scale(&self, f: &RatFunc<F>) -> Self {
        TwoForm { r: &self.r * f }
    }
}

/// `d(p dx + q dy) = (∂q/∂x − ∂p/∂y) dx∧dy`.
pub fn exterior_derivative<F: Field>(w: &OneForm<F>) -> TwoForm<F> {
    TwoForm { r: &w.q.partial_x() - &w.p.partial_y() }
}

pub fn wedge<F: Field>(a: &OneForm<F>, b: &OneForm<F>) -> TwoForm<F> {
    TwoForm { r: &(&a.p * &b.q) - &(&a.q * &b.p) }
}

/// Pull-back under a polynomial map; no division is performed.
pub fn pullback<F: Field>(w: &OneForm<F>, m: &PolyMap<F>) -> OneForm<F> {
    let p = w.p.compose(&m.x, &m.y).expect("pull-back of a coefficient has a zero denominator");
    let q = w.q.compose(&m.x, &m.y).expect("pull-back of a coefficient has a zero denominator");
    let xs = RatFunc::from_poly(m.x.partial_x());
    let xt = RatFunc::from_poly(m.x.partial_y());
    let ys = RatFunc::from_poly(m.y.partial_x());
    let yt = RatFunc::from_poly(m.y.partial_y());
    OneForm { p: &(&p * &xs) + &(&q * &ys), q: &(&p * &xt) + &(&q * &yt) }
}

pub fn pullback_two_form<F: Field>(w: &TwoForm<F>, m: &PolyMap<F>) -> TwoForm<F> {
    let r = w.r.compose(&m.x, &m.y).expect("pull-back of a coefficient has a zero denominator");
    TwoForm { r: &r * &RatFunc::from_poly(m.jacobian()) }
}

/// Pull-back of a polynomial form `a dx + b dy`, kept polynomial.
pub fn pullback_poly<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>, m: &PolyMap<F>) -> (BiPoly<F>, BiPoly<F>) {
    let a1 = a.compose(&m.x, &m.y);
    let b1 = b.compose(&m.x, &m.y);
    let p = &(&a1 * &m.x.partial_x()) + &(&b1 * &m.y.partial_x());
    let q = &(&a1 * &m.x.partial_y()) + &(&b1 * &m.y.partial_y());
    (p, q)
}

/// `df / f`.
pub fn dlog<F: Field>(f: &RatFunc<F>) -> Result<OneForm<F>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero("logarithmic derivative of zero".into()));
    }
    let inv = f.inv().expect("nonzero");
    Ok(OneForm::differential(f).scale(&inv))
}

/// Largest `k` with `f^k` dividing both polynomial coefficients, and the quotient.
pub fn divide_out_poly<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>, f: &BiPoly<F>) -> (u32, BiPoly<F>, BiPoly<F>) {
    assert!(!(a.is_zero() && b.is_zero()), "dividing out of the zero form");
    assert!(!f.is_constant(), "dividing out a unit");
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut k = 0;
    loop {
        match (a.div_exact(f), b.div_exact(f)) {
            (Some(a1), Some(b1)) => {
                a = a1;
                b = b1;
                k += 1;
            }
            _ => return (k, a, b),
        }
    }
}

/// [`divide_out_poly`] on a form; `None` if a coefficient is not polynomial.
pub fn divide_out<F: Field>(w: &OneForm<F>, f: &BiPoly<F>) -> Option<(u32, OneForm<F>)> {
    let (a, b) = w.as_polynomials()?;
    let (k, a, b) = divide_out_poly(&a, &b, f);
    Some((k, OneForm::from_polys(a, b)))
}

impl<F: Field> Add for &OneForm<F> {
    type Output = OneForm<F>;
    fn add(self, rhs: Self) -> OneForm<F> {
        OneForm { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<F: Field> Sub for &OneForm<F> {
    type Output = OneForm<F>;
    fn sub(self, rhs: Self) -> OneForm<F> {
        OneForm { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<F: Field> Neg for &OneForm<F> {
    type Output = OneForm<F>;
    fn neg(self) -> OneForm<F> {
        OneForm { p: -&self.p, q: -&self.q }
    }
}

impl<F: Field> Mul<&OneForm<F>> for &RatFunc<F> {
    type Output = OneForm<F>;
    fn mul(self, rhs: &OneForm<F>) -> OneForm<F> {
        rhs.scale(self)
    }
}

impl<F: Field> Add for &TwoForm<F> {
    type Output = TwoForm<F>;
    fn add(self, rhs: Self) -> TwoForm<F> {
        TwoForm { r: &self.r + &rhs.r }
    }
}

impl<F: Field> Sub for &TwoForm<F> {
    type Output = TwoForm<F>;
    fn sub(self, rhs: Self) -> TwoForm<F> {
        TwoForm { r: &self.r - &rhs.r }
    }
}

impl<F: Field> fmt::Display for OneForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "[{}] dx", self.p),
            (true, false) => write!(f, "[{}] dy", self.q),
            (false, false) => write!(f, "[{}] dx + [{}] dy", self.p, self.q),
        }
    }
}

impl<F: Field> fmt::Display for TwoForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] dx^dy", self.r)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
struct RatFuncRepr<F> {
    num: BiPoly<F>,
    den: BiPoly<F>,
}

impl<F: Field + Serialize> Serialize for RatFunc<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num().clone(), den: self.den().clone() }.serialize(s)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for RatFunc<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::<F>::deserialize(d)?;
        RatFunc::try_new(r.num, r.den).ok_or_else(|| serde::de::Error::custom("zero denominator"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
struct OneFormRepr<F> {
    dx: RatFunc<F>,
    dy: RatFunc<F>,
}

impl<F: Field + Serialize> Serialize for OneForm<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OneFormRepr { dx: self.p.clone(), dy: self.q.clone() }.serialize(s)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for OneForm<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = OneFormRepr::<F>::deserialize(d)?;
        Ok(OneForm { p: r.dx, q: r.dy })
    }
}

impl<F: Field + Serialize> Serialize for TwoForm<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.r.serialize(s)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for TwoForm<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(TwoForm { r: RatFunc::deserialize(d)? })
    }
}
