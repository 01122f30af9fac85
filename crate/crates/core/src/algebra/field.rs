//! The coefficient-field abstraction shared by every polynomial type.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;

/// Exact rational numbers, always in lowest terms with positive denominator.
pub type Q = BigRational;

/// An exact field of characteristic zero.
///
/// Every implementor contains ℚ, so rational constants can always be
/// injected with [`Field::from_rational`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: Q) -> Self;

    /// The value as a rational number, when it lies in ℚ.
    fn to_rational(&self) -> Option<Q>;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    /// Degree of the smallest field this element's arithmetic lives in over ℚ.
    fn field_degree(&self) -> usize {
        1
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Q::from_integer(BigInt::from(n)))
    }

    fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Characteristic polynomial over ℚ of multiplication by `self`; its
    /// roots are the conjugates of `self`.
    fn char_poly_q(&self) -> UniPoly<Q>;
}

impl Field for Q {
    fn from_rational(q: Q) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn char_poly_q(&self) -> UniPoly<Q> {
        UniPoly::linear_root(self.clone())
    }
}

/// Builds `num/den` as an exact rational. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats a rational as `num/den`, the wire format used by every document.
pub fn rational_literal(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `num/den` or a bare integer. Anything looking like a float is rejected.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number literal".into());
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("floating-point literal rejected: {s:?}"));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(n, d))
}

pub fn is_positive(v: &Q) -> bool {
    v.is_positive()
}

/// Exact square root in ℚ, if the value is a perfect square.
pub fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().to_biguint()?;
    let d = v.denom().to_biguint()?;
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &rn * &rn == n && &rd * &rd == d {
        Some(Q::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_round_trip() {
        let v = q(-6, 4);
        assert_eq!(rational_literal(&v), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), v);
        assert_eq!(parse_rational("7").unwrap(), qi(7));
    }

    #[test]
    fn floats_rejected() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }
}
