//! Reduced quotients of bivariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::bipoly::BiPoly;
use super::field::Field;

/// `num / den` with `gcd(num, den) = 1` and the graded-lex leading
/// coefficient of `den` equal to 1. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: BiPoly<F>,
    den: BiPoly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Panics if `den` is zero; use [`RatFunc::try_new`] to get `None` instead.
    pub fn new(num: BiPoly<F>, den: BiPoly<F>) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: BiPoly<F>, den: BiPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let (unit, den) = den.normalize();
        let num = num.scale(&unit.inv());
        Some(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn from_poly(p: BiPoly<F>) -> Self {
        RatFunc { num: p, den: BiPoly::one() }
    }

    pub fn x() -> Self {
        Self::from_poly(BiPoly::x())
    }

    pub fn y() -> Self {
        Self::from_poly(BiPoly::y())
    }

    pub fn num(&self) -> &BiPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &BiPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<BiPoly<F>> {
        self.is_polynomial().then(|| self.num.scale(&self.den.constant_term().inv()))
    }

    pub fn inv(&self) -> Option<Self> {
        Self::try_new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Some(RatFunc { num: base.num.pow(k), den: base.den.pow(k) }.renormalized())
    }

    // powers of a reduced pair stay coprime; only the normalization can drift
    fn renormalized(self) -> Self {
        let (unit, den) = self.den.normalize();
        RatFunc { num: self.num.scale(&unit.inv()), den }
    }

    pub fn partial_x(&self) -> Self {
        let n = &(&self.num.partial_x() * &self.den) - &(&self.num * &self.den.partial_x());
        Self::new(n, self.den.pow(2))
    }

    pub fn partial_y(&self) -> Self {
        let n = &(&self.num.partial_y() * &self.den) - &(&self.num * &self.den.partial_y());
        Self::new(n, self.den.pow(2))
    }

    /// Substitutes polynomials for `x` and `y`; `None` if the denominator vanishes identically.
    pub fn compose(&self, sx: &BiPoly<F>, sy: &BiPoly<F>) -> Option<Self> {
        Self::try_new(self.num.compose(sx, sy), self.den.compose(sx, sy))
    }

    pub fn swap_vars(&self) -> Self {
        Self::new(self.num.swap_vars(), self.den.swap_vars())
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Self::try_new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> RatFunc<G> {
        RatFunc::new(self.num.map(f), self.den.map(f))
    }
}

impl<F: Field> From<BiPoly<F>> for RatFunc<F> {
    fn from(p: BiPoly<F>) -> Self {
        Self::from_poly(p)
    }
}

impl<F: Field> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: Self) -> RatFunc<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        // only the common part of the denominators can cancel
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc { num, den: &self.den * &rhs.den }.renormalized();
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatFunc::zero();
        }
        let g2 = t.gcd(&g);
        let num = t.div_exact(&g2).expect("gcd divides");
        let den = &b1 * &rhs.den.div_exact(&g2).expect("gcd divides");
        RatFunc { num, den }.renormalized()
    }
}

impl<F: Field> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: Self) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: Self) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &BiPoly<F>, g: &BiPoly<F>| if g.is_constant() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFunc { num, den }.renormalized()
    }
}

impl<F: Field> Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: Self) -> RatFunc<F> {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{qi, Q};

    fn mono(c: i64, i: u32, j: u32) -> BiPoly<Q> {
        BiPoly::monomial(qi(c), i, j)
    }

    #[test]
    fn reduction_and_normalization() {
        // (2x^2 y) / (4x y^2) = x / (2y) -> (1/2 x) / y
        let r = RatFunc::new(mono(2, 2, 1), mono(4, 1, 2));
        assert_eq!(r.den(), &mono(1, 0, 1));
        assert_eq!(r.num(), &BiPoly::monomial(crate::algebra::field::q(1, 2), 1, 0));
    }

    #[test]
    fn arithmetic_cancels() {
        let a = RatFunc::new(mono(1, 0, 0), mono(1, 1, 0));
        let b = RatFunc::new(mono(1, 0, 0), mono(1, 0, 1));
        let s = &a + &b;
        // 1/x + 1/y = (x + y)/(xy)
        assert_eq!(s.den(), &mono(1, 1, 1));
        assert_eq!(&s - &b, a);
        assert_eq!(&(&a * &b) / &a, b);
    }

    #[test]
    fn derivative_of_inverse() {
        let a = RatFunc::new(mono(1, 0, 0), mono(1, 1, 0));
        assert_eq!(a.partial_x(), RatFunc::new(mono(-1, 0, 0), mono(1, 2, 0)));
        assert!(a.partial_y().is_zero());
    }
}
