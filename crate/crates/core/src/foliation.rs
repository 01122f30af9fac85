//! Foliation germs `a dx + b dy`, invariance, classification and Camacho–Sad indices.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    factor_univariate, rational_sqrt, real_root_count, residue_at, AlgebraicPoint, BiPoly, ChartId, Field, UniPoly, Q,
};
use crate::error::{Error, Result};
use crate::forms::OneForm;

/// A coordinate axis of a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    /// `{y = 0}`, parametrized by `x`.
    Y0,
    /// `{x = 0}`, parametrized by `y`.
    X0,
}

impl Axis {
    pub fn equation<F: Field>(self) -> BiPoly<F> {
        match self {
            Axis::Y0 => BiPoly::y(),
            Axis::X0 => BiPoly::x(),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Y0 => f.write_str("y=0"),
            Axis::X0 => f.write_str("x=0"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SingularClass {
    Regular,
    Tangency,
    NondegenerateNonresonant,
    NondegenerateResonant,
    Hyperbolic,
    RealIrrationalUnknown,
    SaddleNode,
    NotIrreducible,
}

impl SingularClass {
    /// Irreducible singular point, the terminal state of resolution.
    pub fn is_irreducible(self) -> bool {
        matches!(
            self,
            SingularClass::NondegenerateNonresonant
                | SingularClass::NondegenerateResonant
                | SingularClass::Hyperbolic
                | SingularClass::RealIrrationalUnknown
                | SingularClass::SaddleNode
        )
    }

    pub fn is_singular(self) -> bool {
        !matches!(self, SingularClass::Regular | SingularClass::Tangency)
    }

    /// Nondegenerate with eigenvalue ratio outside ℚ.
    pub fn is_nonresonant(self) -> bool {
        matches!(
            self,
            SingularClass::NondegenerateNonresonant | SingularClass::Hyperbolic | SingularClass::RealIrrationalUnknown
        )
    }
}

impl fmt::Display for SingularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `a dx + b dy` with polynomial, coprime coefficients in a named chart.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationForm<F> {
    pub a: BiPoly<F>,
    pub b: BiPoly<F>,
    pub chart: ChartId,
}

impl<F: Field> FoliationForm<F> {
    /// Divides out `gcd(a, b)` and returns it alongside the reduced form.
    pub fn new(a: BiPoly<F>, b: BiPoly<F>, chart: ChartId) -> Result<(Self, BiPoly<F>)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DivisionByZero("the zero form defines no foliation".into()));
        }
        let g = a.gcd(&b);
        if g.is_constant() {
            return Ok((FoliationForm { a, b, chart }, BiPoly::one()));
        }
        let a = a.div_exact(&g).expect("gcd divides");
        let b = b.div_exact(&g).expect("gcd divides");
        Ok((FoliationForm { a, b, chart }, g))
    }

    /// Builds without reducing; the caller guarantees coprimality.
    pub fn from_reduced(a: BiPoly<F>, b: BiPoly<F>, chart: ChartId) -> Self {
        debug_assert!(a.gcd(&b).is_constant(), "coefficients share a factor");
        FoliationForm { a, b, chart }
    }

    pub fn one_form(&self) -> OneForm<F> {
        OneForm::from_polys(self.a.clone(), self.b.clone())
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.a.constant_term().is_zero() && self.b.constant_term().is_zero()
    }

    /// Algebraic multiplicity at the origin.
    pub fn multiplicity(&self) -> u32 {
        match (self.a.multiplicity(), self.b.multiplicity()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!("nonzero form"),
        }
    }

    /// Linear part of the dual field `X = (-b, a)` at the origin, row-major.
    pub fn linear_part(&self) -> [[F; 2]; 2] {
        let (bx, by) = self.b.linear_coeffs();
        let (ax, ay) = self.a.linear_coeffs();
        [[-bx, -by], [ax, ay]]
    }

    pub fn axis_invariant(&self, axis: Axis) -> bool {
        match axis {
            Axis::Y0 => self.a.restrict_y0().is_zero(),
            Axis::X0 => self.b.restrict_x0().is_zero(),
        }
    }

    pub fn translate(&self, x: &F, y: &F) -> Self {
        FoliationForm { a: self.a.translate(x, y), b: self.b.translate(x, y), chart: self.chart.clone() }
    }

    pub fn scale(&self, u: &BiPoly<F>) -> Self {
        FoliationForm { a: &self.a * u, b: &self.b * u, chart: self.chart.clone() }
    }
}

impl<F: Field> fmt::Display for FoliationForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] dx + [{}] dy", self.a, self.b)
    }
}

/// `curve` divides the coefficient of `ω ∧ d(curve)`.
pub fn is_invariant<F: Field>(fol: &FoliationForm<F>, curve: &BiPoly<F>) -> bool {
    assert!(!curve.is_zero(), "zero curve");
    let w = &(&fol.a * &curve.partial_y()) - &(&fol.b * &curve.partial_x());
    w.div_exact(curve).is_some()
}

/// Outcome of [`classify`] at the origin of a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification<F> {
    pub class: SingularClass,
    /// Eigenvalues of the linear part, when they lie in the coefficient field.
    pub eigenvalues: Option<[F; 2]>,
    /// `λ₂/λ₁`; `None` when infinite or not representable.
    pub ratio: Option<F>,
    pub saddle_node_order: Option<u32>,
    /// Invariant axis tangent to the nonzero eigendirection of a saddle-node.
    pub strong_axis: Option<Axis>,
}

fn sign(v: &Q) -> i8 {
    use num_traits::{Signed, Zero};
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Classifies the origin against the irreducible normal forms.
///
/// With trace `T` and determinant `D` of the linear part, the eigenvalue
/// ratio `r` solves `r² − (s − 2) r + 1 = 0` for `s = T²/D`, so rationality and
/// reality of `r` are decided from `s` alone.
pub fn classify<F: Field>(fol: &FoliationForm<F>) -> Result<Classification<F>> {
    let mut out = Classification {
        class: SingularClass::Regular,
        eigenvalues: None,
        ratio: None,
        saddle_node_order: None,
        strong_axis: None,
    };
    if !fol.is_singular_at_origin() {
        return Ok(out);
    }
    let m = fol.linear_part();
    let tr = m[0][0].clone() + m[1][1].clone();
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let triangular = m[0][1].is_zero() || m[1][0].is_zero();
    if triangular {
        out.eigenvalues = Some([m[0][0].clone(), m[1][1].clone()]);
        if !m[0][0].is_zero() {
            out.ratio = Some(m[1][1].clone() / m[0][0].clone());
        }
    } else {
        let disc = tr.clone() * tr.clone() - F::from_i64(4) * det.clone();
        if let Some(root) = disc.to_rational().and_then(|d| rational_sqrt(&d)) {
            let half = F::from_rational(Q::new(1.into(), 2.into()));
            let r = F::from_rational(root);
            let l1 = (tr.clone() + r.clone()) * half.clone();
            let l2 = (tr.clone() - r) * half;
            if !l1.is_zero() {
                out.ratio = Some(l2.clone() / l1.clone());
            }
            out.eigenvalues = Some([l1, l2]);
        }
    }
    if det.is_zero() {
        if tr.is_zero() {
            out.class = SingularClass::NotIrreducible;
            return Ok(out);
        }
        out.class = SingularClass::SaddleNode;
        let mu = intersection_multiplicity(&fol.a, &fol.b)
            .ok_or_else(|| Error::DivisionByZero("coefficients share a component through the origin".into()))?;
        out.saddle_node_order = Some(mu - 1);
        if fol.axis_invariant(Axis::Y0) && m[1][0].is_zero() && !m[0][0].is_zero() {
            out.strong_axis = Some(Axis::Y0);
        } else if fol.axis_invariant(Axis::X0) && m[0][1].is_zero() && !m[1][1].is_zero() {
            out.strong_axis = Some(Axis::X0);
        }
        return Ok(out);
    }
    let s = tr.clone() * tr / det;
    out.class = match s.to_rational() {
        Some(s) => {
            let disc = s.clone() * (s.clone() - Q::from_integer(4.into()));
            match rational_sqrt(&disc) {
                Some(root) => {
                    let r = (s - Q::from_integer(2.into()) + root) / Q::from_integer(2.into());
                    if sign(&r) > 0 {
                        SingularClass::NotIrreducible
                    } else {
                        SingularClass::NondegenerateResonant
                    }
                }
                None if sign(&disc) < 0 => SingularClass::Hyperbolic,
                None => SingularClass::NondegenerateNonresonant,
            }
        }
        None => {
            let cp = s.char_poly_q();
            let sf = cp.div_exact(&cp.gcd(&cp.derivative())).expect("gcd divides");
            let n = sf.degree().unwrap_or(0);
            let real = real_root_count(&sf, None, None);
            let zero = Q::from_integer(0.into());
            let four = Q::from_integer(4.into());
            if real == 0 {
                SingularClass::Hyperbolic
            } else if real == n && real_root_count(&sf, Some(&zero), Some(&four)) == 0 {
                SingularClass::NondegenerateNonresonant
            } else {
                SingularClass::RealIrrationalUnknown
            }
        }
    };
    Ok(out)
}

/// `i_q(F, σ) = −Res_q (η / h)|_σ` for `ω = h df + f η`, `σ = {f = 0}` a chart axis.
///
/// For `σ = {y = 0}`: `h = b`, `η = (a / y) dx`. For `σ = {x = 0}`: `h = a`,
/// `η = (b / x) dy`. `q` is the coordinate of the point along the axis.
pub fn cs_index<F: Field>(fol: &FoliationForm<F>, axis: Axis, q: &F) -> Result<F> {
    if !fol.axis_invariant(axis) {
        return Err(Error::NotInvariant(format!("{axis} is not invariant by {fol}")));
    }
    let (num, den) = match axis {
        Axis::Y0 => (axis_slice(&fol.a, 1, Axis::Y0), fol.b.restrict_y0()),
        Axis::X0 => (axis_slice(&fol.b, 1, Axis::X0), fol.a.restrict_x0()),
    };
    Ok(-residue_at(&num, &den, q))
}

/// Coefficient of `y^k` (for `Y0`) or `x^k` (for `X0`) as a polynomial along the axis.
fn axis_slice<F: Field>(p: &BiPoly<F>, k: u32, axis: Axis) -> UniPoly<F> {
    let p = match axis {
        Axis::Y0 => p.clone(),
        Axis::X0 => p.swap_vars(),
    };
    let mut c = Vec::new();
    for ((i, j), v) in p.terms() {
        if *j == k {
            let i = *i as usize;
            if c.len() <= i {
                c.resize(i + 1, F::zero());
            }
            c[i] = v.clone();
        }
    }
    UniPoly::new(c)
}

/// Zeros along a non-invariant axis of the coefficient pairing `ω` with the
/// axis direction: `a(x, 0)` on `{y = 0}`, `b(0, y)` on `{x = 0}`. Singular
/// points on the axis are among them.
pub fn tangency_points<F: Field>(fol: &FoliationForm<F>, axis: Axis) -> Result<Vec<(UniPoly<F>, usize)>> {
    if fol.axis_invariant(axis) {
        return Err(Error::NotInvariant(format!("{axis} is invariant; tangency is undefined")));
    }
    let r = match axis {
        Axis::Y0 => fol.a.restrict_y0(),
        Axis::X0 => fol.b.restrict_x0(),
    };
    if r.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    factor_univariate(&r)
}

/// Local intersection multiplicity at the origin (Fulton's algorithm).
/// `None` if the curves share a component through the origin.
pub fn intersection_multiplicity<F: Field>(p: &BiPoly<F>, q: &BiPoly<F>) -> Option<u32> {
    if p.is_zero() || q.is_zero() {
        return None;
    }
    if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
        return Some(0);
    }
    let (mut p, mut q) = (p.clone(), q.clone());
    let (mut pr, mut qr) = (p.restrict_y0(), q.restrict_y0());
    if pr.degree() > qr.degree() {
        std::mem::swap(&mut p, &mut q);
        std::mem::swap(&mut pr, &mut qr);
    }
    match pr.degree() {
        None => {
            let vq = qr.valuation()? as u32;
            let p1 = p.unshift_exponents(0, 1).expect("y divides");
            Some(vq + intersection_multiplicity(&p1, &q)?)
        }
        Some(r) => {
            let s = qr.degree().expect("degree at least that of pr");
            let q2 = &q.scale(&pr.leading_coeff()) - &p.shift_exponents((s - r) as u32, 0).scale(&qr.leading_coeff());
            intersection_multiplicity(&p, &q2)
        }
    }
}

/// A classified point on the exceptional divisor with its indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct SingularityRecord<F> {
    pub id: usize,
    pub location: AlgebraicPoint<F>,
    pub class: SingularClass,
    pub eigenvalues: Option<[F; 2]>,
    pub ratio: Option<F>,
    pub saddle_node_order: Option<u32>,
    /// Component id to Camacho–Sad index along that component.
    pub indices: BTreeMap<usize, F>,
    /// Component id to whether that separatrix has resonant holonomy.
    pub resonant_separatrix_flags: BTreeMap<usize, bool>,
    /// Divisor components through the point.
    pub components: Vec<usize>,
    pub corner: bool,
    /// Component containing the strong separatrix of a saddle-node, if any.
    pub strong_separatrix: Option<usize>,
    /// Number of conjugate points the record stands for.
    pub orbit_degree: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    fn mono(c: Q, i: u32, j: u32) -> BiPoly<Q> {
        BiPoly::monomial(c, i, j)
    }

    fn linear(lambda: Q) -> FoliationForm<Q> {
        FoliationForm::new(mono(-lambda, 0, 1), mono(qi(1), 1, 0), ChartId::origin()).unwrap().0
    }

    fn saddle_node() -> FoliationForm<Q> {
        FoliationForm::new(mono(qi(-1), 0, 2), mono(qi(1), 1, 0), ChartId::origin()).unwrap().0
    }

    #[test]
    fn gcd_is_divided_out() {
        let a = &mono(qi(1), 1, 1) * &(&mono(qi(1), 0, 0) + &mono(qi(1), 1, 0));
        let b = &mono(qi(1), 2, 0) * &(&mono(qi(1), 0, 0) + &mono(qi(1), 1, 0));
        let (f, g) = FoliationForm::new(a, b, ChartId::origin()).unwrap();
        assert_eq!(f.a, mono(qi(1), 0, 1));
        assert_eq!(f.b, mono(qi(1), 1, 0));
        assert_eq!(g.total_degree(), Some(2));
    }

    #[test]
    fn invariance_examples() {
        assert!(is_invariant(&linear(q(3, 7)), &mono(qi(1), 0, 1)));
        let dt = FoliationForm::new(BiPoly::zero(), mono(qi(1), 0, 0), ChartId::origin()).unwrap().0;
        assert!(!is_invariant(&dt, &mono(qi(1), 1, 0)));
        assert!(is_invariant(&saddle_node(), &mono(qi(1), 0, 1)));
    }

    #[test]
    fn classification_examples() {
        // x dy + 2 y dx
        let c = classify(&linear(qi(-2))).unwrap();
        assert_eq!(c.class, SingularClass::NondegenerateResonant);
        assert_eq!(c.ratio, Some(qi(-2)));
        let c = classify(&saddle_node()).unwrap();
        assert_eq!(c.class, SingularClass::SaddleNode);
        assert_eq!(c.eigenvalues, Some([qi(-1), qi(0)]));
        assert_eq!(c.saddle_node_order, Some(1));
        assert_eq!(c.strong_axis, Some(Axis::Y0));
        // 2y dy - 3x^2 dx
        let cusp = FoliationForm::new(mono(qi(-3), 2, 0), mono(qi(2), 0, 1), ChartId::origin()).unwrap().0;
        assert_eq!(classify(&cusp).unwrap().class, SingularClass::NotIrreducible);
        assert_eq!(classify(&linear(q(2, 3))).unwrap().class, SingularClass::NotIrreducible);
    }

    #[test]
    fn non_real_and_irrational_ratios() {
        // x dx + y dy: eigenvalues ±i, ratio -1
        let f = FoliationForm::new(mono(qi(1), 1, 0), mono(qi(1), 0, 1), ChartId::origin()).unwrap().0;
        assert_eq!(classify(&f).unwrap().class, SingularClass::NondegenerateResonant);
        let f = FoliationForm::new(&mono(qi(1), 1, 0) + &mono(qi(1), 0, 1), mono(qi(1), 0, 1), ChartId::origin())
            .unwrap()
            .0;
        // X = (-y, x + y): T = 1, D = 1, s = 1, disc = -3
        assert_eq!(classify(&f).unwrap().class, SingularClass::Hyperbolic);
        // X = (-y, x + 3y): s = 9, disc = 45, real irrational ratio
        let f = FoliationForm::new(&mono(qi(1), 1, 0) + &mono(qi(3), 0, 1), mono(qi(1), 0, 1), ChartId::origin())
            .unwrap()
            .0;
        assert_eq!(classify(&f).unwrap().class, SingularClass::NondegenerateNonresonant);
    }

    #[test]
    fn index_examples() {
        for lam in [q(1, 2), q(-3, 5), qi(7)] {
            assert_eq!(cs_index(&linear(lam.clone()), Axis::Y0, &qi(0)).unwrap(), lam.clone());
            assert_eq!(cs_index(&linear(lam.clone()), Axis::X0, &qi(0)).unwrap(), lam.inv());
        }
        assert_eq!(cs_index(&saddle_node(), Axis::Y0, &qi(0)).unwrap(), qi(0));
        // 6v(1-v) dt + (2-3v) t dv with (x, y) = (v, t): index along {t = 0} at v = 0
        let a = &mono(qi(2), 0, 1) + &mono(qi(-3), 1, 1);
        let b = &mono(qi(6), 1, 0) + &mono(qi(-6), 2, 0);
        let f = FoliationForm::new(a, b, ChartId::origin()).unwrap().0;
        assert_eq!(cs_index(&f, Axis::Y0, &qi(0)).unwrap(), q(-1, 3));
        assert_eq!(cs_index(&f, Axis::Y0, &qi(1)).unwrap(), q(-1, 6));
        // the other axis is invariant too: the corner index along it is -3
        assert_eq!(cs_index(&f, Axis::X0, &qi(0)).unwrap(), qi(-3));
        let dt = FoliationForm::new(BiPoly::zero(), mono(qi(1), 0, 0), ChartId::origin()).unwrap().0;
        assert!(matches!(cs_index(&dt, Axis::X0, &qi(0)), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn tangency_examples() {
        // dt: transverse to {x = 0}
        let dt = FoliationForm::new(BiPoly::zero(), mono(qi(1), 0, 0), ChartId::origin()).unwrap().0;
        assert!(tangency_points(&dt, Axis::X0).unwrap().is_empty());
        // (t^2 - 1) dt + x dx
        let f = FoliationForm::new(mono(qi(1), 1, 0), &mono(qi(1), 0, 2) + &mono(qi(-1), 0, 0), ChartId::origin())
            .unwrap()
            .0;
        let pts = tangency_points(&f, Axis::X0).unwrap();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn fulton_examples() {
        // I(y^2 - x^3, y) = 3, I(y - x^2, y + x^2) = 2
        let cusp = &mono(qi(1), 0, 2) - &mono(qi(1), 3, 0);
        assert_eq!(intersection_multiplicity(&cusp, &mono(qi(1), 0, 1)), Some(3));
        let p = &mono(qi(1), 0, 1) - &mono(qi(1), 2, 0);
        let r = &mono(qi(1), 0, 1) + &mono(qi(1), 2, 0);
        assert_eq!(intersection_multiplicity(&p, &r), Some(2));
        assert_eq!(intersection_multiplicity(&p, &p), None);
    }
}
