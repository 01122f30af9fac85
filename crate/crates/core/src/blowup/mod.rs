//! Point blow-ups and the resolution driver.

mod audit;
mod report;
mod resolve;

pub use audit::{corner_index_drop_check, verify_index_theorem, IndexDropVerdict, IndexTheoremRow};
pub use report::{
    BlowupEvent, ChainRecord, ChartRecord, Corner, DivisorComponent, IndexDropEvent, ResolutionReport, Status,
};
pub use resolve::{resolve, ResolveOptions, DEFAULT_BUDGET};

use crate::algebra::{AlgebraicPoint, BiPoly, ChartId, Field, RatFunc};
use crate::foliation::FoliationForm;
use crate::forms::{divide_out_poly, pullback_poly, PolyMap};

/// Both charts of one blow-up at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupResult<F> {
    /// Power of the exceptional divisor extracted from the pull-back.
    pub nu: u32,
    /// Algebraic multiplicity of the germ at the center.
    pub multiplicity: u32,
    /// Form in `(x, t)`, stored as `(x, y)`; the divisor is `{x = 0}`.
    pub chart1: FoliationForm<F>,
    /// Form in `(u, y)`, stored as `(x, y)`; the divisor is `{y = 0}`.
    pub chart2: FoliationForm<F>,
    pub dicritical: bool,
    pub center: AlgebraicPoint<F>,
}

/// Blows up the origin of the germ's chart.
///
/// Chart names are derived from the germ's chart; the resolution driver
/// renames them after the component they create.
pub fn blow_up<F: Field>(fol: &FoliationForm<F>) -> BlowupResult<F> {
    let c1 = ChartId(format!("{}/1", fol.chart));
    let c2 = ChartId(format!("{}/2", fol.chart));
    blow_up_into(fol, c1, c2)
}

pub(crate) fn blow_up_into<F: Field>(fol: &FoliationForm<F>, c1: ChartId, c2: ChartId) -> BlowupResult<F> {
    let m = fol.multiplicity();
    let (a1, b1) = pullback_poly(&fol.a, &fol.b, &PolyMap::blowup_chart1());
    let (nu, a1, b1) = divide_out_poly(&a1, &b1, &BiPoly::x());
    let (a2, b2) = pullback_poly(&fol.a, &fol.b, &PolyMap::blowup_chart2());
    let (nu2, a2, b2) = divide_out_poly(&a2, &b2, &BiPoly::y());
    debug_assert_eq!(nu, nu2, "charts disagree on the exceptional power");
    let chart1 = FoliationForm::new(a1, b1, c1).expect("nonzero pull-back").0;
    let chart2 = FoliationForm::new(a2, b2, c2).expect("nonzero pull-back").0;
    let out = BlowupResult {
        nu,
        multiplicity: m,
        chart1,
        chart2,
        dicritical: nu == m + 1,
        center: AlgebraicPoint::origin(fol.chart.clone()),
    };
    debug_assert!(charts_coherent(&out), "blow-up charts do not glue");
    out
}

/// `p(1/t, t x) · t^d`, with `d` at least the `x`-degree of `p`.
fn transition<F: Field>(p: &BiPoly<F>, d: u32) -> BiPoly<F> {
    BiPoly::from_terms(p.terms().map(|((i, j), c)| ((*j, d - i + j), c.clone())))
}

/// Chart 2 transported to chart 1 by `(u, y) = (1/t, t x)` agrees with
/// chart 1 up to a monomial factor.
pub fn charts_coherent<F: Field>(r: &BlowupResult<F>) -> bool {
    let d = r.chart2.a.degree_x().unwrap_or(0).max(r.chart2.b.degree_x().unwrap_or(0));
    let at = transition(&r.chart2.a, d);
    let bt = transition(&r.chart2.b, d);
    // t^{d+2} φ*(A du + B dy) = t^3 B̃ dx + (t^2 x B̃ − Ã) dt
    let p = bt.shift_exponents(0, 3);
    let q = &bt.shift_exponents(1, 2) - &at;
    let (a1, b1) = (&r.chart1.a, &r.chart1.b);
    if &(&p * b1) - &(&q * a1) != BiPoly::zero() {
        return false;
    }
    let ratio = if !a1.is_zero() {
        RatFunc::new(p, a1.clone())
    } else {
        RatFunc::new(q, b1.clone())
    };
    ratio.num().num_terms() == 1 && ratio.den().num_terms() == 1
}
