//! Elements of the active coefficient field: ℚ or a simple extension ℚ[z]/(m).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{rational_literal, Field, Q};
use super::unipoly::UniPoly;

/// A simple algebraic extension ℚ[z]/(m) with `m` monic and irreducible.
#[derive(Debug, PartialEq)]
pub struct NumberField {
    modulus: UniPoly<Q>,
}

impl NumberField {
    /// The caller is responsible for irreducibility; see
    /// [`crate::algebra::factor::certify_irreducible`].
    pub fn new(modulus: &UniPoly<Q>) -> Arc<Self> {
        assert!(modulus.degree().unwrap_or(0) >= 2, "extension modulus must have degree >= 2");
        Arc::new(NumberField { modulus: modulus.monic() })
    }

    pub fn modulus(&self) -> &UniPoly<Q> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The residue class of `z`, a root of the modulus.
    pub fn generator(self: &Arc<Self>) -> Scalar {
        Scalar::from_parts(vec![Q::zero(), Q::one()], Some(self.clone()))
    }
}

/// An element of ℚ or of a [`NumberField`], stored in the power basis of `z`.
///
/// Rational values may or may not carry a field handle; arithmetic adopts the
/// handle of whichever operand has one.
#[derive(Clone, Debug)]
pub struct Scalar {
    coeffs: Vec<Q>,
    field: Option<Arc<NumberField>>,
}

fn join(a: &Option<Arc<NumberField>>, b: &Option<Arc<NumberField>>) -> Option<Arc<NumberField>> {
    match (a, b) {
        (Some(x), Some(y)) => {
            assert!(Arc::ptr_eq(x, y) || x == y, "mixing elements of different number fields");
            Some(x.clone())
        }
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl Scalar {
    pub fn from_parts(coeffs: Vec<Q>, field: Option<Arc<NumberField>>) -> Self {
        let mut s = Scalar { coeffs, field };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        if let Some(f) = &self.field {
            if self.coeffs.len() > f.degree() {
                let (_, r) = UniPoly::new(std::mem::take(&mut self.coeffs)).div_rem(f.modulus());
                self.coeffs = r.coeffs().to_vec();
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn rational(v: Q) -> Self {
        Scalar::from_parts(vec![v], None)
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Power-basis coordinates (low degree first, trailing zeros trimmed).
    pub fn coords(&self) -> &[Q] {
        &self.coeffs
    }

    fn as_poly(&self) -> UniPoly<Q> {
        UniPoly::new(self.coeffs.clone())
    }

    /// Trace of multiplication-by-self over ℚ. For rational values this is
    /// `value · [K:ℚ]` where K is the attached field (or ℚ).
    pub fn trace(&self) -> Q {
        let n = self.field.as_ref().map_or(1, |f| f.degree());
        let m = self.multiplication_matrix(n);
        (0..n).fold(Q::zero(), |acc, i| acc + m[i][i].clone())
    }

    /// Matrix of `v ↦ self·v` in the power basis, columns are images of `z^j`.
    fn multiplication_matrix(&self, n: usize) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            let mut basis = vec![Q::zero(); j + 1];
            basis[j] = Q::one();
            let img = self.clone() * Scalar::from_parts(basis, self.field.clone());
            for (i, c) in img.coeffs.iter().enumerate() {
                m[i][j] = c.clone();
            }
        }
        m
    }

    /// Characteristic polynomial over ℚ of multiplication by this element
    /// (a power of its minimal polynomial).
    pub fn char_poly(&self) -> UniPoly<Q> {
        let n = self.field.as_ref().map_or(1, |f| f.degree());
        charpoly(&self.multiplication_matrix(n))
    }

    /// Wire literal: `num/den` for rationals, otherwise `[c0; c1; ...]` in
    /// the power basis. The modulus is recorded separately by callers.
    pub fn literal(&self) -> String {
        match self.to_rational() {
            Some(v) => rational_literal(&v),
            None => {
                let parts: Vec<String> = self.coeffs.iter().map(rational_literal).collect();
                format!("[{}]", parts.join("; "))
            }
        }
    }
}

/// Faddeev–LeVerrier, exact over ℚ. Returns the monic characteristic polynomial.
pub fn charpoly(m: &[Vec<Q>]) -> UniPoly<Q> {
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // mk <- m * (mk + c_{n-k+1} I)
        let c_prev = coeffs[n - k + 1].clone();
        let mut tmp = mk.clone();
        for (i, row) in tmp.iter_mut().enumerate() {
            row[i] = row[i].clone() + c_prev.clone();
        }
        let mut prod = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Q::zero();
                for l in 0..n {
                    acc += m[i][l].clone() * tmp[l][j].clone();
                }
                prod[i][j] = acc;
            }
        }
        mk = prod;
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + mk[i][i].clone());
        coeffs[n - k] = -tr / Q::from_integer((k as i64).into());
    }
    UniPoly::new(coeffs)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { coeffs: Vec::new(), field: None }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::rational(Q::one())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|k| {
                self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
                    + rhs.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
            })
            .collect();
        Scalar::from_parts(c, join(&self.field, &rhs.field))
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), field: self.field }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let field = join(&self.field, &rhs.field);
        if self.coeffs.len() <= 1 || rhs.coeffs.len() <= 1 {
            // cheap path: at least one side is rational
            let (r, other) = if self.coeffs.len() <= 1 { (&self, &rhs) } else { (&rhs, &self) };
            let k = r.coeffs.first().cloned().unwrap_or_else(Q::zero);
            return Scalar::from_parts(other.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), field);
        }
        let prod = &self.as_poly() * &rhs.as_poly();
        Scalar::from_parts(prod.coeffs().to_vec(), field)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv()
    }
}

impl Field for Scalar {
    fn from_rational(q: Q) -> Self {
        Scalar::rational(q)
    }

    fn to_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if let Some(v) = self.to_rational() {
            return Scalar::from_parts(vec![v.recip()], self.field.clone());
        }
        let f = self.field.as_ref().expect("irrational element without field");
        let (g, s, _) = self.as_poly().ext_gcd(f.modulus());
        debug_assert_eq!(g, UniPoly::one(), "modulus not irreducible");
        Scalar::from_parts(s.coeffs().to_vec(), self.field.clone())
    }

    fn field_degree(&self) -> usize {
        self.field.as_ref().map_or(1, |f| f.degree())
    }

    fn char_poly_q(&self) -> UniPoly<Q> {
        self.char_poly()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_rational() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<Q> for Scalar {
    fn from(v: Q) -> Self {
        Scalar::rational(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};

    fn sqrt2() -> (Arc<NumberField>, Scalar) {
        let f = NumberField::new(&UniPoly::new(vec![qi(-2), qi(0), qi(1)]));
        let z = f.generator();
        (f, z)
    }

    #[test]
    fn generator_squares_to_two() {
        let (_, z) = sqrt2();
        assert_eq!(z.clone() * z.clone(), Scalar::from(qi(2)));
    }

    #[test]
    fn inverse_in_extension() {
        let (_, z) = sqrt2();
        let a = z.clone() + Scalar::from(qi(1));
        let inv = a.inv();
        assert_eq!(a * inv, Scalar::one());
        // 1/(1+√2) = √2 - 1
        assert_eq!((z.clone() + Scalar::one()).inv(), z - Scalar::one());
    }

    #[test]
    fn trace_and_charpoly() {
        let (_, z) = sqrt2();
        let a = z.clone() * Scalar::from(q(1, 2)) + Scalar::from(qi(3));
        assert_eq!(a.trace(), qi(6));
        // (t - 3)^2 - 1/2
        assert_eq!(a.char_poly(), UniPoly::new(vec![q(17, 2), qi(-6), qi(1)]));
    }

    #[test]
    fn literal_forms() {
        let (_, z) = sqrt2();
        assert_eq!(Scalar::from(q(-1, 3)).literal(), "-1/3");
        assert_eq!((z + Scalar::from(qi(1))).literal(), "[1/1; 1/1]");
    }
}
