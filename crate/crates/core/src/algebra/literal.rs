//! Wire formats: rationals as `"num/den"`, polynomials as maps from exponent
//! strings (`"i"` or `"i,j"`) to coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::field::{parse_rational, rational_literal, Field, Q};
use super::scalar::{NumberField, Scalar};
use super::unipoly::UniPoly;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rational(String),
    Algebraic { basis: Vec<String>, modulus: Vec<String> },
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match (self.to_rational(), self.field()) {
            (Some(v), _) => ScalarRepr::Rational(rational_literal(&v)),
            (None, Some(f)) => ScalarRepr::Algebraic {
                basis: self.coords().iter().map(rational_literal).collect(),
                modulus: f.modulus().coeffs().iter().map(rational_literal).collect(),
            },
            (None, None) => unreachable!("irrational scalar without a field"),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Rational(s) => parse_rational(&s).map(Scalar::from).map_err(de::Error::custom),
            ScalarRepr::Algebraic { basis, modulus } => {
                let parse = |v: &[String]| -> Result<Vec<Q>, D::Error> {
                    v.iter().map(|s| parse_rational(s).map_err(de::Error::custom)).collect()
                };
                let m = UniPoly::new(parse(&modulus)?);
                if m.degree().unwrap_or(0) < 2 {
                    return Err(de::Error::custom("extension modulus must have degree >= 2"));
                }
                let field: Arc<NumberField> = NumberField::new(&m);
                Ok(Scalar::from_parts(parse(&basis)?, Some(field)))
            }
        }
    }
}

fn parse_exponent(key: &str, arity: usize) -> Result<Vec<u32>, String> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if parts.len() != arity {
        return Err(format!("exponent key {key:?} must have {arity} part(s)"));
    }
    parts.iter().map(|p| p.parse::<u32>().map_err(|_| format!("bad exponent in {key:?}"))).collect()
}

impl<F: Field + Serialize> Serialize for UniPoly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nz: Vec<(usize, &F)> = self.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut m = s.serialize_map(Some(nz.len()))?;
        for (k, c) in nz {
            m.serialize_entry(&k.to_string(), c)?;
        }
        m.end()
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for UniPoly<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, F> = BTreeMap::deserialize(d)?;
        let mut coeffs: Vec<F> = Vec::new();
        for (k, c) in raw {
            let e = parse_exponent(&k, 1).map_err(de::Error::custom)?[0] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, F::zero());
            }
            coeffs[e] = coeffs[e].clone() + c;
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl<F: Field + Serialize> Serialize for BiPoly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.num_terms()))?;
        for ((i, j), c) in self.terms() {
            m.serialize_entry(&format!("{i},{j}"), c)?;
        }
        m.end()
    }
}

struct BiPolyVisitor<F>(std::marker::PhantomData<F>);

impl<'de, F: Field + Deserialize<'de>> Visitor<'de> for BiPolyVisitor<F> {
    type Value = BiPoly<F>;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("a map from \"i,j\" exponent keys to coefficients")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
        let mut p = BiPoly::zero();
        while let Some((k, c)) = access.next_entry::<String, F>()? {
            let e = parse_exponent(&k, 2).map_err(de::Error::custom)?;
            p.add_term((e[0], e[1]), c);
        }
        Ok(p)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for BiPoly<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(BiPolyVisitor(std::marker::PhantomData))
    }
}

/// Parses a rational bivariate literal (`"i,j" -> "num/den"`).
pub fn parse_bipoly(lit: &BTreeMap<String, String>) -> Result<BiPoly<Q>, String> {
    let mut p = BiPoly::zero();
    for (k, v) in lit {
        let e = parse_exponent(k, 2)?;
        p.add_term((e[0], e[1]), parse_rational(v)?);
    }
    Ok(p)
}

pub fn bipoly_literal(p: &BiPoly<Q>) -> BTreeMap<String, String> {
    p.terms().map(|((i, j), c)| (format!("{i},{j}"), rational_literal(c))).collect()
}

/// Parses a rational univariate literal (`"i" -> "num/den"`).
pub fn parse_unipoly(lit: &BTreeMap<String, String>) -> Result<UniPoly<Q>, String> {
    let mut coeffs: Vec<Q> = Vec::new();
    for (k, v) in lit {
        let e = parse_exponent(k, 1)?[0] as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Q::from_integer(0.into()));
        }
        coeffs[e] = coeffs[e].clone() + parse_rational(v)?;
    }
    Ok(UniPoly::new(coeffs))
}

pub fn to_scalar_poly(p: &BiPoly<Q>) -> BiPoly<Scalar> {
    p.map(|c| Scalar::from(c.clone()))
}
