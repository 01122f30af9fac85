use proptest::prelude::*;

use folres_core::algebra::{q, qi, BiPoly, ChartId, RatFunc, Scalar, Q};
use folres_core::blowup::{blow_up, charts_coherent, corner_index_drop_check, resolve, verify_index_theorem, ResolveOptions, Status};
use folres_core::chains::{check_lemma2, extract_chains, ASequence, Rule};
use folres_core::foliation::{cs_index, Axis, FoliationForm};
use folres_core::forms::OneForm;
use folres_core::triples::{linear_model_triple, modify_triple, roundtrip_check, verify_triple, ModificationParams, ProjectiveTriple};
use folres_core::ResolutionReport;

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |v| *v != qi(0))
}

/// Polynomial with exponents below 3 and small integer coefficients.
fn small_poly(min_degree: u32) -> impl Strategy<Value = BiPoly<Q>> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..4).prop_map(move |terms| {
        BiPoly::from_terms(terms.into_iter().filter(|((i, j), _)| i + j >= min_degree).map(|(e, c)| (e, qi(c))))
    })
}

fn unit_like() -> impl Strategy<Value = RatFunc<Q>> {
    (small_poly(1), small_poly(1), 1i64..=3).prop_map(|(n, d, c)| {
        let c = BiPoly::constant(qi(c));
        RatFunc::new(&c + &n, &c + &d)
    })
}

fn rat_func() -> impl Strategy<Value = RatFunc<Q>> {
    (small_poly(0), small_poly(1)).prop_map(|(n, d)| RatFunc::new(n, &BiPoly::one() + &d))
}

fn to_scalar(p: &BiPoly<Q>) -> BiPoly<Scalar> {
    BiPoly::from_terms(p.terms().map(|(e, c)| (*e, Scalar::from(c.clone()))))
}

fn resolve_q(a: &BiPoly<Q>, b: &BiPoly<Q>) -> ResolutionReport {
    resolve(&to_scalar(a), &to_scalar(b), &ResolveOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linear_model_index(lambda in rational()) {
        let (f, _) = FoliationForm::new(BiPoly::monomial(-lambda.clone(), 0, 1), BiPoly::monomial(qi(1), 1, 0), ChartId::origin()).unwrap();
        prop_assert_eq!(cs_index(&f, Axis::Y0, &qi(0)).unwrap(), lambda);
    }

    #[test]
    fn resonant_linear_model_blows_up_once(n in 1i64..8, d in 1i64..8) {
        let lambda = q(-n, d);
        let r = resolve_q(&BiPoly::monomial(-lambda.clone(), 0, 1), &BiPoly::monomial(qi(1), 1, 0));
        prop_assert_eq!(r.status, Status::Resolved);
        prop_assert_eq!(r.blowups, 1);
        let mut got: Vec<Scalar> = r.singularities.iter().map(|p| p.indices[&r.components[0].id].clone()).collect();
        got.sort_by_key(|v| v.to_string());
        let one = qi(1);
        let mut want = vec![
            Scalar::from(one.clone() / (lambda.clone() - one.clone())),
            Scalar::from(lambda.clone() / (one - lambda)),
        ];
        want.sort_by_key(|v| v.to_string());
        prop_assert_eq!(got, want);
    }

    #[test]
    fn charts_are_coherent(a in small_poly(1), b in small_poly(1)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (f, _) = FoliationForm::new(a, b, ChartId::origin()).unwrap();
        prop_assume!(f.is_singular_at_origin());
        prop_assert!(charts_coherent(&blow_up(&f)));
    }

    #[test]
    fn resolved_reports_satisfy_audits(a in small_poly(1), b in small_poly(1)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let r = resolve_q(&a, &b);
        prop_assume!(r.status == Status::Resolved);
        for row in verify_index_theorem(&r).unwrap() {
            prop_assert!(row.holds, "E{}", row.component);
        }
        for d in corner_index_drop_check(&r) {
            prop_assert!(d.holds);
        }
        for ch in extract_chains(&r).unwrap() {
            prop_assert!(ch.order_identity_holds(), "{}", ch.sequence());
            prop_assert!(check_lemma2(&ch.sequence()), "{}", ch.sequence());
        }
    }

    #[test]
    fn report_serialization_is_stable(a in small_poly(1), b in small_poly(1)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let r = resolve_q(&a, &b);
        let once = serde_json::to_string(&r).unwrap();
        let back: ResolutionReport = serde_json::from_str(&once).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), once);
    }

    #[test]
    fn derived_sequences_satisfy_both_lemmas(picks in prop::collection::vec(0usize..16, 0..8)) {
        let mut s = ASequence::seed();
        for p in picks {
            let t = s.len();
            let rule = if p % (t.max(1)) == 0 { Rule::Head } else { Rule::Insert(p % t) };
            s = s.apply(rule).unwrap();
        }
        prop_assert!(s.satisfies_head_identity(), "{}", s);
        prop_assert!(check_lemma2(&s), "{}", s);
    }

    #[test]
    fn modification_preserves_structure(lambda in rational(), g in unit_like(), h in rat_func()) {
        let t = linear_model_triple(lambda);
        let p = ModificationParams { g, h };
        let m = modify_triple(&t, &p).unwrap();
        prop_assert!(verify_triple(&m).passes());
        prop_assert!(roundtrip_check(&t, &p).unwrap());
    }

    #[test]
    fn modification_of_dy(g in unit_like(), h in rat_func()) {
        let t = ProjectiveTriple { omega: OneForm::dy(), eta: OneForm::zero(), xi: OneForm::zero() };
        let m = modify_triple(&t, &ModificationParams { g, h }).unwrap();
        prop_assert!(verify_triple(&m).passes());
    }

    #[test]
    fn inverse_params_compose_to_identity(g in unit_like(), h in rat_func(), c in nonzero_rational()) {
        let p = ModificationParams { g: g.scale(&c), h };
        let inv = p.inverse().unwrap();
        prop_assert_eq!(inv.inverse().unwrap(), p);
    }

    #[test]
    fn gcd_keeps_common_factors(f in small_poly(0), a in small_poly(0), b in small_poly(0)) {
        prop_assume!(!f.is_zero() && !a.is_zero() && !b.is_zero());
        let (fa, fb) = (&f * &a, &f * &b);
        let g = fa.gcd(&fb);
        prop_assert!(g.div_exact(&f.normalize().1).is_some());
        prop_assert!(fa.div_exact(&g).is_some() && fb.div_exact(&g).is_some());
        let (qa, qb) = (fa.div_exact(&g).unwrap(), fb.div_exact(&g).unwrap());
        prop_assert!(qa.gcd(&qb).is_constant());
    }

    #[test]
    fn rational_function_field_laws(a in rat_func(), b in rat_func(), c in unit_like()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &c) / &c, a.clone());
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }
}
