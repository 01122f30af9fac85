//! Projective triples `(Ω, η, ξ)`: the structure equations, modifications,
//! and the closed forms of the function relating two compatible `ξ`.

use serde::{Deserialize, Serialize};

use crate::algebra::{BiPoly, Field, RatFunc, UniPoly};
use crate::error::{Error, Result};
use crate::forms::{dlog, exterior_derivative, wedge, OneForm, TwoForm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct ProjectiveTriple<F> {
    pub omega: OneForm<F>,
    pub eta: OneForm<F>,
    pub xi: OneForm<F>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct ModificationParams<F> {
    pub g: RatFunc<F>,
    pub h: RatFunc<F>,
}

impl<F: Field> ModificationParams<F> {
    pub fn identity() -> Self {
        ModificationParams { g: RatFunc::one(), h: RatFunc::zero() }
    }

    /// Parameters undoing `self`: `(1/g, −h/g)`.
    pub fn inverse(&self) -> Result<Self> {
        let gi = self.g.inv().ok_or_else(|| Error::DivisionByZero("g vanishes identically".into()))?;
        Ok(ModificationParams { h: -&(&self.h * &gi), g: gi })
    }
}

/// One structure equation: `lhs − rhs` is the residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct AxiomCheck<F> {
    pub holds: bool,
    pub residual: TwoForm<F>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct TripleVerdict<F> {
    /// `dΩ = η ∧ Ω`
    pub p1: AxiomCheck<F>,
    /// `dη = Ω ∧ ξ`
    pub p2: AxiomCheck<F>,
    /// `dξ = ξ ∧ η`
    pub p3: AxiomCheck<F>,
    /// `dη = 0` and `ξ = 0`: the structure is affine.
    pub affine: bool,
}

impl<F: Field> TripleVerdict<F> {
    pub fn passes(&self) -> bool {
        self.p1.holds && self.p2.holds && self.p3.holds
    }
}

fn axiom<F: Field>(lhs: TwoForm<F>, rhs: TwoForm<F>) -> AxiomCheck<F> {
    let residual = TwoForm::new(&lhs.r - &rhs.r);
    AxiomCheck { holds: residual.is_zero(), residual }
}

pub fn verify_triple<F: Field>(t: &ProjectiveTriple<F>) -> TripleVerdict<F> {
    let deta = exterior_derivative(&t.eta);
    TripleVerdict {
        p1: axiom(exterior_derivative(&t.omega), wedge(&t.eta, &t.omega)),
        p2: axiom(deta.clone(), wedge(&t.omega, &t.xi)),
        p3: axiom(exterior_derivative(&t.xi), wedge(&t.xi, &t.eta)),
        affine: deta.is_zero() && t.xi.is_zero(),
    }
}

/// `Ω' = gΩ`, `η' = η + dg/g + hΩ`, `ξ' = (ξ − dh − hη − h²Ω/2)/g`.
pub fn modify_triple<F: Field>(t: &ProjectiveTriple<F>, p: &ModificationParams<F>) -> Result<ProjectiveTriple<F>> {
    let gi = p.g.inv().ok_or_else(|| Error::DivisionByZero("g vanishes identically".into()))?;
    let half = RatFunc::constant(F::from_rational(crate::algebra::q(1, 2)));
    let omega = t.omega.scale(&p.g);
    let eta = &(&t.eta + &dlog(&p.g)?) + &t.omega.scale(&p.h);
    let h2 = &(&p.h * &p.h) * &half;
    let inner = &(&(&t.xi - &OneForm::differential(&p.h)) - &t.eta.scale(&p.h)) - &t.omega.scale(&h2);
    Ok(ProjectiveTriple { omega, eta, xi: inner.scale(&gi) })
}

/// Applies `p` and then its inverse, and compares with the input.
pub fn roundtrip_check<F: Field>(t: &ProjectiveTriple<F>, p: &ModificationParams<F>) -> Result<bool> {
    let there = modify_triple(t, p)?;
    let back = modify_triple(&there, &p.inverse()?)?;
    Ok(&back == t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct Extraction<F> {
    /// `ξ₂ = ξ₁ + F Ω`.
    pub f: RatFunc<F>,
    /// `dΩ = −½ dF/F ∧ Ω`; `None` when `F = 0`.
    pub closed: Option<bool>,
}

/// `F` with `ξ₂ − ξ₁ = F Ω`, and whether it satisfies `dΩ = −½ dF/F ∧ Ω`.
pub fn extract_f<F: Field>(t1: &ProjectiveTriple<F>, t2: &ProjectiveTriple<F>) -> Result<Extraction<F>> {
    if t1.omega != t2.omega || t1.eta != t2.eta {
        return Err(Error::NotProportional("the triples differ in Ω or η".into()));
    }
    let omega = &t1.omega;
    if omega.is_zero() {
        return Err(Error::DivisionByZero("Ω vanishes".into()));
    }
    let diff = &t2.xi - &t1.xi;
    // diff ∥ Ω, then read F off a nonzero coefficient
    if !wedge(&diff, omega).is_zero() {
        return Err(Error::NotProportional("ξ₂ − ξ₁ is not a multiple of Ω".into()));
    }
    let f = if !omega.p.is_zero() { &diff.p / &omega.p } else { &diff.q / &omega.q };
    if f.is_zero() {
        return Ok(Extraction { f, closed: None });
    }
    let closed = closedness_holds(omega, &f)?;
    Ok(Extraction { f, closed: Some(closed) })
}

/// `dΩ = −½ dF/F ∧ Ω`.
pub fn closedness_holds<F: Field>(omega: &OneForm<F>, f: &RatFunc<F>) -> Result<bool> {
    let minus_half = RatFunc::constant(F::from_rational(crate::algebra::q(-1, 2)));
    let eta = dlog(f)?.scale(&minus_half);
    Ok(exterior_derivative(omega) == wedge(&eta, omega))
}

/// A univariate rational function `num(z) / den(z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub struct UniRational<F> {
    pub num: UniPoly<F>,
    pub den: UniPoly<F>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: Field + Serialize", deserialize = "F: Field + Deserialize<'de>"))]
pub enum NormalForm<F> {
    /// `Ω = g(x dy − λ y dx)`, `F = (gxy)^{−2}`, times `φ(x^k y^l)` when given.
    Linear { lambda: F, phi: Option<(u32, u32, UniRational<F>)> },
    /// `Ω = g(y dx + l x(1 + c x y^l) dy)`, `F = (g x² y^{l+1})^{−2}`.
    Nonlinearizable { l: u32, c: F },
    /// `Ω = g(x dy − y² dx)`, `F = (g x y²)^{−2}`.
    SaddleNode,
}

fn mono<F: Field>(c: F, i: u32, j: u32) -> RatFunc<F> {
    RatFunc::from_poly(BiPoly::monomial(c, i, j))
}

/// `p(x^k y^l)` as a bivariate polynomial.
fn substitute<F: Field>(p: &UniPoly<F>, k: u32, l: u32) -> BiPoly<F> {
    BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((k * i as u32, l * i as u32), c.clone())))
}

/// `(Ω, F)` of a normal form with multiplier `g`.
pub fn normal_form<F: Field>(case: &NormalForm<F>, g: &RatFunc<F>) -> Result<(OneForm<F>, RatFunc<F>)> {
    let (omega, base) = match case {
        NormalForm::Linear { lambda, .. } => {
            (OneForm::new(mono(-lambda.clone(), 0, 1), mono(F::one(), 1, 0)), mono(F::one(), 1, 1))
        }
        NormalForm::Nonlinearizable { l, c } => {
            let lf = F::from_i64(*l as i64);
            let q = &mono(lf.clone(), 1, 0) + &mono(lf * c.clone(), 2, *l);
            (OneForm::new(mono(F::one(), 0, 1), q), mono(F::one(), 2, l + 1))
        }
        NormalForm::SaddleNode => (OneForm::new(mono(-F::one(), 0, 2), mono(F::one(), 1, 0)), mono(F::one(), 1, 2)),
    };
    let gb = &base * g;
    let mut f = gb.pow(-2).ok_or_else(|| Error::DivisionByZero("g vanishes identically".into()))?;
    if let NormalForm::Linear { phi: Some((k, l, phi)), .. } = case {
        let num = substitute(&phi.num, *k, *l);
        let den = substitute(&phi.den, *k, *l);
        let p = RatFunc::try_new(num, den).ok_or_else(|| Error::DivisionByZero("φ has a zero denominator".into()))?;
        f = &f * &p;
    }
    Ok((omega.scale(g), f))
}

/// Builds the normal form and checks `dΩ = −½ dF/F ∧ Ω`.
pub fn check_normal_form_identity<F: Field>(case: &NormalForm<F>, g: &RatFunc<F>) -> Result<bool> {
    let (omega, f) = normal_form(case, g)?;
    if f.is_zero() {
        return Ok(false);
    }
    closedness_holds(&omega, &f)
}

/// `(x dy − λ y dx, dx/x + dy/y, 0)`, which satisfies the structure equations for every `λ`.
pub fn linear_model_triple<F: Field>(lambda: F) -> ProjectiveTriple<F> {
    let inv_x = RatFunc::new(BiPoly::one(), BiPoly::x());
    let inv_y = RatFunc::new(BiPoly::one(), BiPoly::y());
    ProjectiveTriple {
        omega: OneForm::new(mono(-lambda, 0, 1), mono(F::one(), 1, 0)),
        eta: OneForm::new(inv_x, inv_y),
        xi: OneForm::zero(),
    }
}
