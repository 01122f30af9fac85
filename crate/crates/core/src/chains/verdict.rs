use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::chain::{corner_clause, is_minimal_from, ChainPoint, Clause, LinearChain};
use crate::algebra::Scalar;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictTag {
    Extends,
    Minimal,
    /// Dicritical pattern outside every case the analysis covers.
    Uncovered,
}

/// Which dicritical components the chain and its parent carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    /// No dicritical component among `P_1, …, P_{m+1}`.
    Nondicritical,
    /// Only the parent `P_{m+1}` is dicritical.
    DicriticalParent,
    /// Only `P_1` is dicritical.
    DicriticalFirst,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepReason {
    /// The corner `r_t` is nondegenerate with irrational eigenvalue ratio.
    NonresonantCorner,
    /// A point of `P_t` off the corners and `ζ_t` has nonzero index.
    NonzeroIndexPoint,
    DicriticalEnd,
    /// Extension already holds near `r_{t−1}` and passes through `r_t`.
    Propagated,
    /// Covered afterwards from `P_{t+1}` through a corner satisfying a clause.
    BackPropagated,
}

/// Exact witness that `P_t` carries a point of nonzero index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexCertificate {
    pub component: usize,
    pub corner_sum: Scalar,
    /// `−k̄_t`.
    pub target: Scalar,
    pub witness: usize,
    pub witness_index: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrailStep {
    /// `t` in `P_t`; `m + 1` for the parent.
    pub level: usize,
    pub component: usize,
    pub reason: StepReason,
    pub certificate: Option<IndexCertificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClauseWitness {
    pub level: usize,
    pub corner: usize,
    pub clause: Clause,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub chain: usize,
    pub tag: VerdictTag,
    pub pattern: Pattern,
    /// Justifications in the order they were found, for `Extends`.
    pub trail: Vec<TrailStep>,
    /// Clause met at each analysed corner, for `Minimal`.
    pub clauses: Vec<ClauseWitness>,
    /// First level analysed: 2 when `P_1` is dicritical.
    pub start: usize,
    pub note: Option<String>,
}

pub fn pattern(chain: &LinearChain) -> Pattern {
    let dic: Vec<usize> = (1..=chain.len()).filter(|&l| chain.dicritical[l - 1]).collect();
    match (dic.as_slice(), chain.parent_dicritical) {
        ([], false) => Pattern::Nondicritical,
        ([], true) => Pattern::DicriticalParent,
        ([1], false) => Pattern::DicriticalFirst,
        _ => Pattern::Other,
    }
}

fn nonzero_point(points: &[ChainPoint]) -> Option<&ChainPoint> {
    points.iter().find(|p| !p.in_zeta && p.index.as_ref().is_some_and(|v| !v.is_zero()))
}

/// Replays the corner-by-corner induction on the chain.
pub fn chain_verdict(chain: &LinearChain) -> Result<ChainVerdict> {
    let m = chain.len();
    let mut v = ChainVerdict {
        chain: chain.id,
        tag: VerdictTag::Extends,
        pattern: pattern(chain),
        trail: Vec::new(),
        clauses: Vec::new(),
        start: 1,
        note: None,
    };
    match v.pattern {
        Pattern::Other => {
            v.tag = VerdictTag::Uncovered;
            v.note = Some("dicritical components in a pattern no case covers".into());
            return Ok(v);
        }
        Pattern::DicriticalParent => {
            v.trail.push(TrailStep {
                level: m + 1,
                component: chain.parent,
                reason: StepReason::DicriticalEnd,
                certificate: None,
            });
            for l in (1..=m).rev() {
                v.trail.push(TrailStep {
                    level: l,
                    component: chain.p(l),
                    reason: StepReason::Propagated,
                    certificate: None,
                });
            }
            return Ok(v);
        }
        Pattern::DicriticalFirst => v.start = 2,
        Pattern::Nondicritical => {}
    }

    let mut extended_at: Option<usize> = None;
    for t in v.start..=m {
        let step = |reason, certificate| TrailStep { level: t, component: chain.p(t), reason, certificate };
        if extended_at.is_some() {
            v.trail.push(step(StepReason::Propagated, None));
            continue;
        }
        let r = chain.corner(t);
        if r.class.is_nonresonant() {
            v.trail.push(step(StepReason::NonresonantCorner, None));
            extended_at = Some(t);
            continue;
        }
        if let Some(clause) = corner_clause(chain, t)? {
            v.clauses.push(ClauseWitness { level: t, corner: r.point, clause });
            continue;
        }
        let sum = chain.corner_sum(t)?;
        let target = -chain.kbar[t - 1].clone();
        match nonzero_point(&chain.points[t - 1]) {
            Some(p) if sum != target => {
                let cert = IndexCertificate {
                    component: chain.p(t),
                    corner_sum: sum,
                    target,
                    witness: p.point,
                    witness_index: p.index.clone().expect("nonzero index"),
                };
                v.trail.push(step(StepReason::NonzeroIndexPoint, Some(cert)));
                extended_at = Some(t);
            }
            _ => {
                v.tag = VerdictTag::Uncovered;
                v.note = Some(format!("r_{t} meets no clause and P_{t} has no certificate point"));
                return Ok(v);
            }
        }
    }

    match extended_at {
        Some(t) => {
            for l in (v.start..t).rev() {
                v.trail.push(TrailStep {
                    level: l,
                    component: chain.p(l),
                    reason: StepReason::BackPropagated,
                    certificate: None,
                });
            }
            if v.pattern == Pattern::DicriticalFirst {
                v.trail.push(TrailStep { level: 1, component: chain.p(1), reason: StepReason::DicriticalEnd, certificate: None });
            }
            v.clauses.clear();
        }
        None if v.pattern == Pattern::DicriticalFirst && m == 1 => {
            v.trail.push(TrailStep { level: 1, component: chain.p(1), reason: StepReason::DicriticalEnd, certificate: None });
        }
        None => {
            debug_assert!(is_minimal_from(chain, v.start)?, "minimal verdict on a non-minimal chain");
            v.tag = VerdictTag::Minimal;
        }
    }
    Ok(v)
}

/// Every index certificate in the trail recomputes exactly from the chain.
pub fn certificates_hold(chain: &LinearChain, verdict: &ChainVerdict) -> bool {
    verdict.trail.iter().filter_map(|s| s.certificate.as_ref().map(|c| (s.level, c))).all(|(t, c)| {
        let Ok(sum) = chain.corner_sum(t) else { return false };
        let target = -chain.kbar[t - 1].clone();
        let witness = chain.points[t - 1].iter().find(|p| p.point == c.witness);
        sum == c.corner_sum
            && target == c.target
            && sum != target
            && c.component == chain.p(t)
            && witness.is_some_and(|p| !p.in_zeta && p.index.as_ref() == Some(&c.witness_index))
            && !c.witness_index.is_zero()
    })
}
