//! Sparse polynomials in the two chart coordinates `x` and `y`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::field::{Field, Q};
use super::unipoly::UniPoly;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// Graded-lex comparison: total degree first, then the `x` exponent.
pub fn grlex(a: &Exponent, b: &Exponent) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<F> {
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> BiPoly<F> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: F, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(F::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exponent, F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Algebraic multiplicity at the origin: the minimal total degree of a term.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Leading exponent and coefficient under [`grlex`].
    pub fn leading_term(&self) -> Option<(Exponent, F)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Largest `k` with `x^k` dividing the polynomial (0 for the zero polynomial).
    pub fn x_valuation(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).min().unwrap_or(0)
    }

    pub fn y_valuation(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift_exponents(&self, i: u32, j: u32) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(e, a)| ((e.0 + i, e.1 + j), a.clone())).collect(),
        }
    }

    /// Divides by `x^i y^j`; `None` unless every term is divisible.
    pub fn unshift_exponents(&self, i: u32, j: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            if e.0 < i || e.1 < j {
                return None;
            }
            terms.insert((e.0 - i, e.1 - j), a.clone());
        }
        Some(BiPoly { terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(e, a)| ((e.0 - 1, e.1), a.clone() * F::from_i64(e.0 as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(e, a)| ((e.0, e.1 - 1), a.clone() * F::from_i64(e.1 as i64))),
        )
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        self.terms.iter().fold(F::zero(), |acc, (e, a)| {
            acc + a.clone() * pow_f(x, e.0) * pow_f(y, e.1)
        })
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, a)| ((e.1, e.0), a.clone())).collect() }
    }

    /// `p(X(x,y), Y(x,y))`.
    pub fn compose(&self, sx: &Self, sy: &Self) -> Self {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let xp = powers(sx, dx);
        let yp = powers(sy, dy);
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            let t = (&xp[e.0 as usize] * &yp[e.1 as usize]).scale(a);
            out = &out + &t;
        }
        out
    }

    /// `p(x + cx, y + cy)`.
    pub fn translate(&self, cx: &F, cy: &F) -> Self {
        let sx = &Self::x() + &Self::constant(cx.clone());
        let sy = &Self::y() + &Self::constant(cy.clone());
        self.compose(&sx, &sy)
    }

    /// Restriction to the axis `{y = 0}` as a polynomial in `x`.
    pub fn restrict_y0(&self) -> UniPoly<F> {
        let n = self.degree_x().unwrap_or(0) as usize;
        let mut c = vec![F::zero(); n + 1];
        for (e, a) in &self.terms {
            if e.1 == 0 {
                c[e.0 as usize] = a.clone();
            }
        }
        UniPoly::new(c)
    }

    /// Restriction to the axis `{x = 0}` as a polynomial in `y`.
    pub fn restrict_x0(&self) -> UniPoly<F> {
        self.swap_vars().restrict_y0()
    }

    /// Coefficients as a polynomial in `y` over `F[x]`, indexed by `y`-degree.
    pub fn y_coefficients(&self) -> Vec<UniPoly<F>> {
        let n = match self.degree_y() {
            Some(n) => n as usize,
            None => return Vec::new(),
        };
        let mut rows: Vec<Vec<F>> = vec![Vec::new(); n + 1];
        for (e, a) in &self.terms {
            let row = &mut rows[e.1 as usize];
            if row.len() <= e.0 as usize {
                row.resize(e.0 as usize + 1, F::zero());
            }
            row[e.0 as usize] = a.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coefficients(rows: &[UniPoly<F>]) -> Self {
        let mut p = Self::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, a) in row.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), a.clone());
            }
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_uni_x(p: &UniPoly<F>) -> Self {
        Self::from_y_coefficients(std::slice::from_ref(p))
    }

    /// Embeds a univariate polynomial as a polynomial in `y`.
    pub fn from_uni_y(p: &UniPoly<F>) -> Self {
        Self::from_uni_x(p).swap_vars()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (ld, lc) = d.leading_term().expect("division by zero polynomial");
        if d.num_terms() == 1 {
            let inv = lc.inv();
            return self.unshift_exponents(ld.0, ld.1).map(|p| p.scale(&inv));
        }
        let inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((lr, c)) = rem.leading_term() {
            if lr.0 < ld.0 || lr.1 < ld.1 {
                return None;
            }
            let t = Self::monomial(c * inv.clone(), lr.0 - ld.0, lr.1 - ld.1);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Scales so that the graded-lex leading coefficient is 1. Returns the
    /// removed unit alongside.
    pub fn normalize(&self) -> (F, Self) {
        match self.leading_term() {
            None => (F::one(), Self::zero()),
            Some((_, c)) => {
                let inv = c.inv();
                (c, self.scale(&inv))
            }
        }
    }

    /// Greatest common divisor, normalized with leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize().1;
        }
        if other.is_zero() {
            return self.normalize().1;
        }
        if self.is_constant() || other.is_constant() || super::modular::certainly_coprime(self, other) {
            return Self::one();
        }
        if let (Some(a), Some(b)) = (self.to_rational_poly(), other.to_rational_poly()) {
            if let Some(g) = super::heugcd::gcd(&a, &b) {
                return g.map(|c| F::from_rational(c.clone())).normalize().1;
            }
        }
        // monomial parts are handled separately to keep the PRS small
        let mx = self.x_valuation().min(other.x_valuation());
        let my = self.y_valuation().min(other.y_valuation());
        let a = self.unshift_exponents(self.x_valuation(), self.y_valuation()).unwrap();
        let b = other.unshift_exponents(other.x_valuation(), other.y_valuation()).unwrap();
        let ra = a.y_coefficients();
        let rb = b.y_coefficients();
        let ca = content(&ra);
        let cb = content(&rb);
        let c = ca.gcd(&cb);
        let mut pa = divide_rows(&ra, &ca);
        let mut pb = divide_rows(&rb, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !pb.is_empty() {
            let r = pseudo_rem(&pa, &pb);
            pa = pb;
            pb = primitive_part(&r);
        }
        let g = primitive_part(&pa);
        let g = &Self::from_y_coefficients(&g) * &Self::from_uni_x(&c);
        g.shift_exponents(mx, my).normalize().1
    }

    /// The same polynomial over ℚ, if every coefficient is rational.
    pub fn to_rational_poly(&self) -> Option<BiPoly<Q>> {
        let terms: Option<Vec<(Exponent, Q)>> = self.terms.iter().map(|(e, c)| c.to_rational().map(|q| (*e, q))).collect();
        terms.map(BiPoly::from_terms)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BiPoly<G> {
        BiPoly::from_terms(self.terms.iter().map(|(e, a)| (*e, f(a))))
    }

    /// Linear part at the origin as `[[∂x, ∂y]]` coefficients.
    pub fn linear_coeffs(&self) -> (F, F) {
        (self.coeff(1, 0), self.coeff(0, 1))
    }
}

fn pow_f<F: Field>(b: &F, e: u32) -> F {
    let mut acc = F::one();
    for _ in 0..e {
        acc = acc * b.clone();
    }
    acc
}

fn powers<F: Field>(p: &BiPoly<F>, n: usize) -> Vec<BiPoly<F>> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(BiPoly::one());
    for k in 0..n {
        let next = &v[k] * p;
        v.push(next);
    }
    v
}

fn content<F: Field>(rows: &[UniPoly<F>]) -> UniPoly<F> {
    rows.iter().fold(UniPoly::zero(), |g, r| g.gcd(r))
}

fn divide_rows<F: Field>(rows: &[UniPoly<F>], c: &UniPoly<F>) -> Vec<UniPoly<F>> {
    rows.iter().map(|r| r.div_exact(c).expect("content divides")).collect()
}

fn trim<F: Field>(mut rows: Vec<UniPoly<F>>) -> Vec<UniPoly<F>> {
    while rows.last().is_some_and(|r| r.is_zero()) {
        rows.pop();
    }
    rows
}

fn primitive_part<F: Field>(rows: &[UniPoly<F>]) -> Vec<UniPoly<F>> {
    let rows = trim(rows.to_vec());
    if rows.is_empty() {
        return rows;
    }
    let c = content(&rows);
    divide_rows(&rows, &c)
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y` over `F[x]`.
fn pseudo_rem<F: Field>(a: &[UniPoly<F>], b: &[UniPoly<F>]) -> Vec<UniPoly<F>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = trim(a.to_vec());
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UniPoly<F>> = r.iter().map(|c| c * lb).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * bk);
        }
        r = trim(next);
    }
    r
}

impl<F: Field> Add for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn add(self, rhs: Self) -> BiPoly<F> {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, a) in &small.terms {
            out.add_term(*e, a.clone());
        }
        out
    }
}

impl<F: Field> Sub for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn sub(self, rhs: Self) -> BiPoly<F> {
        let mut out = self.clone();
        for (e, a) in &rhs.terms {
            out.add_term(*e, -a.clone());
        }
        out
    }
}

impl<F: Field> Mul for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn mul(self, rhs: Self) -> BiPoly<F> {
        let mut out = BiPoly::zero();
        for (e1, a) in &self.terms {
            for (e2, b) in &rhs.terms {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn neg(self) -> BiPoly<F> {
        BiPoly { terms: self.terms.iter().map(|(e, a)| (*e, -a.clone())).collect() }
    }
}

impl<F: Field> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (k, ((i, j), c)) in terms.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = Vec::new();
                    if *i == 1 {
                        s.push("x".to_string());
                    } else if *i > 1 {
                        s.push(format!("x^{i}"));
                    }
                    if *j == 1 {
                        s.push("y".to_string());
                    } else if *j > 1 {
                        s.push(format!("y^{j}"));
                    }
                    s.join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{qi, Q};

    fn mono(c: i64, i: u32, j: u32) -> BiPoly<Q> {
        BiPoly::monomial(qi(c), i, j)
    }

    fn sum(ps: &[BiPoly<Q>]) -> BiPoly<Q> {
        ps.iter().fold(BiPoly::zero(), |a, b| &a + b)
    }

    #[test]
    fn translation_example() {
        // y^2 - x at (1, 1) becomes y^2 + 2y - x
        let p = sum(&[mono(1, 0, 2), mono(-1, 1, 0)]);
        let shifted = p.translate(&qi(1), &qi(1));
        assert_eq!(shifted, sum(&[mono(1, 0, 2), mono(2, 0, 1), mono(-1, 1, 0)]));
    }

    #[test]
    fn exact_division() {
        let a = sum(&[mono(1, 1, 0), mono(1, 0, 1)]);
        let b = sum(&[mono(1, 1, 0), mono(-1, 0, 1), mono(3, 0, 0)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&mono(1, 0, 2)), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = sum(&[mono(1, 2, 0), mono(-1, 0, 1), mono(1, 0, 0)]);
        let a = &common * &sum(&[mono(2, 1, 0), mono(1, 0, 1)]);
        let b = &common * &sum(&[mono(1, 1, 1), mono(-3, 0, 0)]);
        let g = a.gcd(&b);
        assert_eq!(g, common.normalize().1);
    }

    #[test]
    fn gcd_with_monomials() {
        let a = &mono(1, 2, 1) * &sum(&[mono(1, 1, 0), mono(1, 0, 0)]);
        let b = mono(3, 1, 3);
        assert_eq!(a.gcd(&b), mono(1, 1, 1));
    }

    #[test]
    fn multiplicity_and_restriction() {
        let p = sum(&[mono(2, 0, 2), mono(-3, 2, 0), mono(1, 3, 1)]);
        assert_eq!(p.multiplicity(), Some(2));
        assert_eq!(p.restrict_y0(), UniPoly::new(vec![qi(0), qi(0), qi(-3)]));
        assert_eq!(p.restrict_x0(), UniPoly::new(vec![qi(0), qi(0), qi(2)]));
    }
}
