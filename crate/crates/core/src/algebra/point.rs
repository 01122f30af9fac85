//! Points in chart coordinates, possibly given as a conjugate orbit.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::field::{Field, Q};
use super::scalar::{NumberField, Scalar};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Names a coordinate chart: `U0` is the original plane, `E3.1` is the first
/// chart of the blow-up that created component `E3`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChartId(pub String);

impl ChartId {
    pub fn origin() -> Self {
        ChartId("U0".into())
    }

    pub fn blowup(component: usize, chart: u8) -> Self {
        ChartId(format!("E{component}.{chart}"))
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
#[serde(rename_all = "snake_case")]
pub enum Coordinate<F> {
    Value(F),
    /// Any root of an irreducible polynomial; the point stands for its whole orbit.
    RootOf(UniPoly<F>),
}

impl<F: Field> Coordinate<F> {
    pub fn zero() -> Self {
        Coordinate::Value(F::zero())
    }

    /// Explicit value when the coordinate lies in the base field.
    pub fn value(&self) -> Option<F> {
        match self {
            Coordinate::Value(v) => Some(v.clone()),
            Coordinate::RootOf(f) if f.degree() == Some(1) => Some(-(f.coeff(0) / f.coeff(1))),
            Coordinate::RootOf(_) => None,
        }
    }

    /// Number of conjugate values the description stands for.
    pub fn orbit_degree(&self) -> usize {
        match self {
            Coordinate::Value(_) => 1,
            Coordinate::RootOf(f) => f.degree().unwrap_or(1),
        }
    }

    /// Canonical form: degree-one polynomials become explicit values.
    pub fn canonical(self) -> Self {
        match self.value() {
            Some(v) => Coordinate::Value(v),
            None => self,
        }
    }
}

impl<F: Field> fmt::Display for Coordinate<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Value(v) => write!(f, "{v}"),
            Coordinate::RootOf(p) => write!(f, "root of {p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct AlgebraicPoint<F> {
    pub chart: ChartId,
    pub x: Coordinate<F>,
    pub y: Coordinate<F>,
}

impl<F: Field> AlgebraicPoint<F> {
    pub fn new(chart: ChartId, x: Coordinate<F>, y: Coordinate<F>) -> Self {
        AlgebraicPoint { chart, x: x.canonical(), y: y.canonical() }
    }

    pub fn origin(chart: ChartId) -> Self {
        Self::new(chart, Coordinate::zero(), Coordinate::zero())
    }

    pub fn orbit_degree(&self) -> usize {
        self.x.orbit_degree() * self.y.orbit_degree()
    }
}

impl<F: Field> fmt::Display for AlgebraicPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: x = {}, y = {}", self.chart, self.x, self.y)
    }
}

fn coordinate_value(c: &Coordinate<Scalar>, field: &mut Option<std::sync::Arc<NumberField>>) -> Result<Scalar> {
    if let Some(v) = c.value() {
        return Ok(v);
    }
    let Coordinate::RootOf(f) = c else { unreachable!() };
    if field.is_some() {
        return Err(Error::UnsupportedField("point needs a second algebraic extension".into()));
    }
    let rational: Option<Vec<Q>> = f.coeffs().iter().map(|v| v.to_rational()).collect();
    let nested = f.coeffs().iter().any(|v| v.field_degree() > 1);
    match rational {
        Some(rc) if !nested => {
            let nf = NumberField::new(&UniPoly::new(rc));
            let z = nf.generator();
            *field = Some(nf);
            Ok(z)
        }
        _ => Err(Error::UnsupportedField(format!("nested extension by {f}"))),
    }
}

/// Explicit coordinates of `pt`, adjoining a root when the point is an orbit.
/// The third component is the extension that was created, if any.
pub fn point_coordinates(pt: &AlgebraicPoint<Scalar>) -> Result<(Scalar, Scalar, Option<std::sync::Arc<NumberField>>)> {
    let mut field = None;
    let x = coordinate_value(&pt.x, &mut field)?;
    let y = coordinate_value(&pt.y, &mut field)?;
    Ok((x, y, field))
}

/// `p` composed with the shift moving `pt` to the origin.
///
/// Orbit points are handled by passing to ℚ[z]/(f) and shifting by the class
/// of `z`. A point whose coordinates would need a second extension, or a
/// polynomial already living in an extension, yields `UnsupportedField`.
pub fn translate_to_origin(p: &BiPoly<Scalar>, pt: &AlgebraicPoint<Scalar>) -> Result<BiPoly<Scalar>> {
    let (x, y, field) = point_coordinates(pt)?;
    if field.is_some() && p.terms().any(|(_, c)| c.field_degree() > 1) {
        return Err(Error::UnsupportedField("polynomial already lives in an extension".into()));
    }
    Ok(p.translate(&x, &y))
}
