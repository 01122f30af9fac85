use folres_core::algebra::{q, qi, BiPoly, ChartId, Field, Scalar, Q};
use folres_core::blowup::{blow_up, charts_coherent, corner_index_drop_check, resolve, verify_index_theorem, ResolveOptions, Status};
use folres_core::foliation::{classify, cs_index, Axis, FoliationForm, SingularClass};
use folres_core::ResolutionReport;

fn poly(terms: &[(Q, u32, u32)]) -> BiPoly<Scalar> {
    BiPoly::from_terms(terms.iter().map(|(c, i, j)| ((*i, *j), Scalar::from(c.clone()))))
}

fn run(a: &[(Q, u32, u32)], b: &[(Q, u32, u32)]) -> ResolutionReport {
    resolve(&poly(a), &poly(b), &ResolveOptions::default()).unwrap()
}

/// `x dy − λ y dx`
fn linear(lambda: Q) -> ResolutionReport {
    run(&[(-lambda, 0, 1)], &[(qi(1), 1, 0)])
}

fn cusp() -> ResolutionReport {
    run(&[(qi(-3), 2, 0)], &[(qi(2), 0, 1)])
}

fn sorted_indices(r: &ResolutionReport, comp: usize) -> Vec<Q> {
    let mut v: Vec<Q> = r.component(comp).unwrap().singularities.iter()
        .map(|&p| r.point(p).unwrap().indices[&comp].to_rational().unwrap())
        .collect();
    v.sort();
    v
}

fn s(v: Q) -> Scalar {
    Scalar::from(v)
}

#[test]
fn linear_index_along_y_axis() {
    for lambda in [q(-3, 7), qi(2), q(5, 2), qi(-1)] {
        let (f, _) = FoliationForm::new(
            BiPoly::monomial(-lambda.clone(), 0, 1),
            BiPoly::monomial(qi(1), 1, 0),
            ChartId::origin(),
        )
        .unwrap();
        assert_eq!(cs_index(&f, Axis::Y0, &qi(0)).unwrap(), lambda);
    }
}

#[test]
fn saddle_node_strong_axis_has_zero_index() {
    let (f, _) = FoliationForm::new(BiPoly::monomial(qi(-1), 0, 2), BiPoly::monomial(qi(1), 1, 0), ChartId::origin()).unwrap();
    assert_eq!(classify(&f).unwrap().class, SingularClass::SaddleNode);
    assert_eq!(cs_index(&f, Axis::Y0, &qi(0)).unwrap(), qi(0));
}

#[test]
fn one_blowup_of_x_dy_plus_y_dx() {
    let r = linear(qi(-1));
    assert_eq!(r.status, Status::Resolved);
    assert_eq!(r.blowups, 1);
    let e = &r.components[0];
    assert_eq!(e.self_intersection, -1);
    assert!(!e.dicritical);
    assert_eq!(sorted_indices(&r, e.id), vec![q(-1, 2), q(-1, 2)]);
    for &p in &e.singularities {
        assert_eq!(r.point(p).unwrap().class, SingularClass::NondegenerateResonant);
    }
}

#[test]
fn linear_model_after_one_blowup() {
    let lambda = q(-3, 5);
    let r = linear(lambda.clone());
    assert_eq!(r.blowups, 1);
    let one = qi(1);
    let mut want = vec![one.clone() / (lambda.clone() - one.clone()), lambda.clone() / (one - lambda)];
    want.sort();
    assert_eq!(sorted_indices(&r, r.components[0].id), want);
}

#[test]
fn cusp_resolution() {
    let r = cusp();
    assert_eq!(r.status, Status::Resolved);
    assert_eq!(r.blowups, 3);
    let mut selfs: Vec<i64> = r.components.iter().map(|c| c.self_intersection).collect();
    selfs.sort();
    assert_eq!(selfs, vec![-3, -2, -1]);
    let last = r.components.iter().find(|c| c.self_intersection == -1).unwrap();
    assert_eq!(sorted_indices(&r, last.id), vec![q(-1, 2), q(-1, 3), q(-1, 6)]);
    assert!(r.components.iter().all(|c| !c.dicritical));
}

#[test]
fn radial_is_one_dicritical_line() {
    let r = linear(qi(1));
    assert_eq!(r.status, Status::Resolved);
    assert_eq!(r.blowups, 1);
    assert_eq!(r.components.len(), 1);
    assert!(r.components[0].dicritical);
    assert!(r.components[0].singularities.is_empty());
    assert!(r.singularities.is_empty());
}

#[test]
fn lambda_two_has_a_dicritical_end() {
    let r = linear(qi(2));
    assert_eq!(r.blowups, 2);
    let dic: Vec<bool> = r.components.iter().map(|c| c.dicritical).collect();
    assert_eq!(dic, vec![false, true]);
    assert_eq!(r.components[0].self_intersection, -2);
}

#[test]
fn second_cusp_weights() {
    let r = run(&[(qi(-5), 4, 0)], &[(qi(3), 0, 2)]);
    assert_eq!(r.blowups, 4);
    let w: Vec<i64> = r.components.iter().map(|c| c.weight()).collect();
    assert_eq!(w, vec![3, 3, 2, 1]);
}

#[test]
fn audits_hold_on_corpus() {
    let corpus = vec![
        linear(qi(-1)),
        linear(qi(-2)),
        linear(q(-1, 2)),
        linear(q(-3, 5)),
        linear(qi(2)),
        cusp(),
        linear(qi(1)),
        run(&[(qi(-5), 4, 0)], &[(qi(3), 0, 2)]),
    ];
    for r in &corpus {
        for row in verify_index_theorem(r).unwrap() {
            assert!(row.holds, "E{}: {} vs {}", row.component, row.index_sum, row.self_intersection);
        }
        for d in corner_index_drop_check(r) {
            assert!(d.holds);
            assert_eq!(d.event.post, d.event.pre.clone() - s(qi(1)));
        }
    }
}

#[test]
fn budget_is_reported_as_status() {
    let opts = ResolveOptions { budget: 2, ..ResolveOptions::default() };
    let r = resolve(&poly(&[(qi(-3), 2, 0)]), &poly(&[(qi(2), 0, 1)]), &opts).unwrap();
    assert_eq!(r.status, Status::BudgetExceeded);
}

#[test]
fn irrational_tangents_need_permission() {
    // tangent cone x a + y b = y² − 2x², so the new points sit at t² = 2
    let a = poly(&[(qi(-2), 1, 0), (qi(1), 0, 1)]);
    let b = poly(&[(qi(-1), 1, 0), (qi(1), 0, 1)]);
    let r = resolve(&a, &b, &ResolveOptions::default()).unwrap();
    assert_eq!(r.status, Status::UnsupportedField);
    let opts = ResolveOptions { allow_extensions: true, ..ResolveOptions::default() };
    let r = resolve(&a, &b, &opts).unwrap();
    assert_eq!(r.status, Status::Resolved);
    assert!(r.singularities.iter().any(|p| p.orbit_degree == 2));
    for row in verify_index_theorem(&r).unwrap() {
        assert!(row.holds);
    }
}

#[test]
fn blowup_charts_agree() {
    let (f, _) = FoliationForm::new(
        poly(&[(qi(-3), 2, 0), (qi(1), 1, 1)]),
        poly(&[(qi(2), 0, 1), (qi(1), 2, 0)]),
        ChartId::origin(),
    )
    .unwrap();
    assert!(charts_coherent(&blow_up(&f)));
}

#[test]
fn zero_form_is_rejected() {
    assert!(resolve(&BiPoly::zero(), &BiPoly::zero(), &ResolveOptions::default()).is_err());
}
