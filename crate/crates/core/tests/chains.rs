use folres_core::algebra::{q, qi, BiPoly, Field, Scalar, Q};
use folres_core::blowup::{resolve, ResolveOptions};
use folres_core::chains::*;
use folres_core::foliation::SingularClass;
use folres_core::ResolutionReport;

fn s(v: Q) -> Scalar {
    Scalar::from(v)
}

fn poly(terms: &[(Q, u32, u32)]) -> BiPoly<Scalar> {
    BiPoly::from_terms(terms.iter().map(|(c, i, j)| ((*i, *j), s(c.clone()))))
}

fn run(a: &[(Q, u32, u32)], b: &[(Q, u32, u32)]) -> ResolutionReport {
    resolve(&poly(a), &poly(b), &ResolveOptions::default()).unwrap()
}

fn analyse(r: &ResolutionReport) -> (Vec<LinearChain>, Vec<ChainVerdict>, Schedule) {
    let chains = extract_chains(r).unwrap();
    let verdicts: Vec<ChainVerdict> = chains.iter().map(|c| chain_verdict(c).unwrap()).collect();
    let schedule = extension_schedule(r, &chains, &verdicts).unwrap();
    (chains, verdicts, schedule)
}

#[test]
fn cusp_chain() {
    let r = run(&[(qi(-3), 2, 0)], &[(qi(2), 0, 1)]);
    let (chains, verdicts, schedule) = analyse(&r);
    assert_eq!(chains.len(), 1);
    let ch = &chains[0];
    assert_eq!(ch.sequence().to_string(), "2.1.2");
    assert!(ch.order_identity_holds());
    assert!(!is_minimal(ch).unwrap());
    let v = &verdicts[0];
    assert_eq!(v.tag, VerdictTag::Extends);
    assert_eq!(v.pattern, Pattern::Nondicritical);
    assert!(certificates_hold(ch, v));
    let reasons: Vec<StepReason> = v.trail.iter().map(|t| t.reason).collect();
    assert_eq!(reasons, vec![StepReason::NonzeroIndexPoint, StepReason::BackPropagated]);
    for c in &r.components {
        assert!(schedule.covers(c.id));
    }
    let o = &schedule.origins[0];
    assert!(o.consistent);
    assert_eq!(o.pre_recorded, Some(s(qi(-1))));
    assert_eq!(o.nonnegative, Some(false));
    assert!(!o.minimal);
}

#[test]
fn second_cusp_chain() {
    let r = run(&[(qi(-5), 4, 0)], &[(qi(3), 0, 2)]);
    let (chains, verdicts, _) = analyse(&r);
    assert_eq!(chains[0].sequence().to_string(), "2.2.1.3");
    assert!(chains[0].order_identity_holds());
    assert!(check_lemma2(&chains[0].sequence()));
    assert_eq!(verdicts[0].tag, VerdictTag::Extends);
}

#[test]
fn dicritical_first_component() {
    let r = run(&[(qi(-2), 0, 1)], &[(qi(1), 1, 0)]);
    let (chains, verdicts, schedule) = analyse(&r);
    assert_eq!(chains[0].sequence().to_string(), "1.1");
    assert_eq!(verdicts[0].pattern, Pattern::DicriticalFirst);
    assert_eq!(verdicts[0].tag, VerdictTag::Extends);
    assert_eq!(schedule.steps.len(), 2);
}

#[test]
fn radial_has_no_chains() {
    let r = run(&[(qi(-1), 0, 1)], &[(qi(1), 1, 0)]);
    let (chains, _, schedule) = analyse(&r);
    assert!(chains.is_empty());
    assert_eq!(schedule.steps.len(), 1);
    assert_eq!(schedule.steps[0].tag, StepTag::DicriticalEnd);
}

struct Level {
    weight: i64,
    corner: SingularClass,
    lower: Option<Q>,
    upper: Option<Q>,
    points: Vec<(SingularClass, Q)>,
}

/// Builds a chain straight from per-level data, `P_1` first.
fn fixture(levels: Vec<Level>) -> LinearChain {
    let m = levels.len();
    let mut next_id = 100;
    let mut id = || {
        next_id += 1;
        next_id
    };
    let mut ch = LinearChain {
        id: 1,
        origin: 0,
        parent: 0,
        parent_dicritical: false,
        components: (1..=m).collect(),
        dicritical: vec![false; m],
        weights: Vec::new(),
        corners: Vec::new(),
        points: Vec::new(),
        c: Vec::new(),
        kbar: Vec::new(),
        n_r: 1,
        origin_pre_index: None,
        children: Vec::new(),
    };
    for lv in levels {
        ch.corners.push(ChainCorner {
            point: id(),
            class: lv.corner,
            lower: lv.lower.map(s),
            upper: lv.upper.map(s),
        });
        let pts: Vec<ChainPoint> = lv
            .points
            .into_iter()
            .map(|(class, v)| ChainPoint {
                point: id(),
                class,
                in_zeta: v > qi(0),
                index: Some(s(v)),
                copies: 1,
                child_chain: None,
            })
            .collect();
        let c: Q = pts.iter().filter(|p| p.in_zeta).map(|p| p.index.as_ref().unwrap().to_rational().unwrap()).sum();
        ch.kbar.push(s(qi(lv.weight) + c.clone()));
        ch.c.push(s(c));
        ch.weights.push(lv.weight);
        ch.points.push(pts);
    }
    ch
}

#[test]
fn fixture_clause_regular() {
    let ch = fixture(vec![Level { weight: 1, corner: SingularClass::Regular, lower: None, upper: None, points: vec![] }]);
    assert_eq!(corner_clause(&ch, 1).unwrap(), Some(Clause::Regular));
    let v = chain_verdict(&ch).unwrap();
    assert_eq!(v.tag, VerdictTag::Minimal);
    assert_eq!(v.clauses[0].clause, Clause::Regular);
}

#[test]
fn fixture_clause_saddle_node() {
    let ch = fixture(vec![Level {
        weight: 1,
        corner: SingularClass::SaddleNode,
        lower: Some(qi(-1)),
        upper: Some(qi(0)),
        points: vec![],
    }]);
    assert!(is_minimal(&ch).unwrap());
    assert_eq!(chain_verdict(&ch).unwrap().tag, VerdictTag::Minimal);
    let mut off = ch.clone();
    off.corners[0].upper = Some(s(qi(-1)));
    assert!(!is_minimal(&off).unwrap());
}

#[test]
fn fixture_clause_resonant() {
    // k̄ = 2 + 1/2 from one positive-index point
    let ch = fixture(vec![Level {
        weight: 2,
        corner: SingularClass::NondegenerateResonant,
        lower: Some(q(-5, 2)),
        upper: Some(q(-2, 5)),
        points: vec![(SingularClass::NondegenerateResonant, q(1, 2))],
    }]);
    assert_eq!(ch.kbar[0], s(q(5, 2)));
    assert_eq!(corner_clause(&ch, 1).unwrap(), Some(Clause::Resonant));
    assert_eq!(chain_verdict(&ch).unwrap().tag, VerdictTag::Minimal);
}

#[test]
fn fixture_all_three_clauses() {
    let ch = fixture(vec![
        Level { weight: 1, corner: SingularClass::NondegenerateResonant, lower: Some(qi(-1)), upper: Some(qi(-1)), points: vec![] },
        Level { weight: 2, corner: SingularClass::SaddleNode, lower: Some(qi(-1)), upper: Some(qi(0)), points: vec![] },
        Level { weight: 1, corner: SingularClass::Regular, lower: None, upper: None, points: vec![] },
    ]);
    let v = chain_verdict(&ch).unwrap();
    assert_eq!(v.tag, VerdictTag::Minimal);
    let clauses: Vec<Clause> = v.clauses.iter().map(|w| w.clause).collect();
    assert_eq!(clauses, vec![Clause::Resonant, Clause::SaddleNode, Clause::Regular]);
}

#[test]
fn fixture_extends_with_certificate() {
    let ch = fixture(vec![
        Level {
            weight: 1,
            corner: SingularClass::NondegenerateResonant,
            lower: Some(q(-1, 2)),
            upper: Some(qi(-2)),
            points: vec![(SingularClass::NondegenerateResonant, q(-1, 2))],
        },
        Level { weight: 2, corner: SingularClass::SaddleNode, lower: Some(qi(-1)), upper: Some(qi(0)), points: vec![] },
    ]);
    let v = chain_verdict(&ch).unwrap();
    assert_eq!(v.tag, VerdictTag::Extends);
    assert!(certificates_hold(&ch, &v));
    let cert = v.trail[0].certificate.as_ref().unwrap();
    assert_eq!(cert.corner_sum, s(q(-1, 2)));
    assert_eq!(cert.target, s(qi(-1)));
    assert_eq!(v.trail[1].reason, StepReason::Propagated);
    // a tampered certificate no longer checks
    let mut forged = v.clone();
    forged.trail[0].certificate.as_mut().unwrap().witness_index = s(q(1, 3));
    assert!(!certificates_hold(&ch, &forged));
}

#[test]
fn nonresonant_corner_extends() {
    let ch = fixture(vec![Level {
        weight: 1,
        corner: SingularClass::NondegenerateNonresonant,
        lower: None,
        upper: None,
        points: vec![],
    }]);
    let v = chain_verdict(&ch).unwrap();
    assert_eq!(v.tag, VerdictTag::Extends);
    assert_eq!(v.trail[0].reason, StepReason::NonresonantCorner);
}

#[test]
fn no_witness_is_uncovered() {
    let ch = fixture(vec![Level {
        weight: 1,
        corner: SingularClass::NondegenerateResonant,
        lower: Some(q(-1, 2)),
        upper: Some(qi(-2)),
        points: vec![],
    }]);
    assert_eq!(chain_verdict(&ch).unwrap().tag, VerdictTag::Uncovered);
}
