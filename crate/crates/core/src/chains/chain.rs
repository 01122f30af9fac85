use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::aseq::{continued_fraction, ASequence};
use crate::algebra::{Field, Scalar, Q};
use crate::blowup::{ChainRecord, ResolutionReport};
use crate::error::{Error, Result};
use crate::foliation::SingularClass;

/// `r_l = P_l ∩ P_{l+1}` with its indices along both sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainCorner {
    pub point: usize,
    pub class: SingularClass,
    /// `i_{r_l}(P_l)`; absent on a dicritical side.
    pub lower: Option<Scalar>,
    /// `i_{r_l}(P_{l+1})`.
    pub upper: Option<Scalar>,
}

/// A non-corner point of a chain component as it stood when the chain was completed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainPoint {
    pub point: usize,
    pub class: SingularClass,
    pub index: Option<Scalar>,
    /// Number of conjugate points on one conjugate of the component.
    pub copies: usize,
    /// Set when the point was later blown up as the origin of that chain.
    pub child_chain: Option<usize>,
    pub in_zeta: bool,
}

/// Components are stored `P_1` first; `parent` is `P_{m+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearChain {
    pub id: usize,
    pub origin: usize,
    pub parent: usize,
    pub parent_dicritical: bool,
    pub components: Vec<usize>,
    pub dicritical: Vec<bool>,
    /// `k_l` at completion.
    pub weights: Vec<i64>,
    /// `r_1, …, r_m`; `r_m` lies on the parent.
    pub corners: Vec<ChainCorner>,
    pub points: Vec<Vec<ChainPoint>>,
    pub c: Vec<Scalar>,
    pub kbar: Vec<Scalar>,
    pub n_r: u32,
    pub origin_pre_index: Option<Scalar>,
    pub children: Vec<usize>,
}

impl LinearChain {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `P_l` for `1 ≤ l ≤ m`.
    pub fn p(&self, l: usize) -> usize {
        self.components[l - 1]
    }

    pub fn corner(&self, l: usize) -> &ChainCorner {
        &self.corners[l - 1]
    }

    /// `n_r.k_m.….k_1`.
    pub fn sequence(&self) -> ASequence {
        let mut e = vec![self.n_r as u64];
        e.extend(self.weights.iter().rev().map(|&k| k as u64));
        ASequence::unchecked(e)
    }

    /// `n_r = [k_m, …, k_1]`.
    pub fn order_identity_holds(&self) -> bool {
        let ks: Vec<u64> = self.weights.iter().rev().map(|&k| k as u64).collect();
        continued_fraction(&ks).is_ok_and(|v| v == Q::from_integer(self.n_r.into()))
    }

    /// `i_{r_l}(P_l) + i_{r_{l−1}}(P_l)`, the second term absent for `l = 1`.
    pub fn corner_sum(&self, l: usize) -> Result<Scalar> {
        let lower = self
            .corner(l)
            .lower
            .clone()
            .ok_or_else(|| Error::MissingIndex(format!("r_{l} along P_{l} (E{})", self.p(l))))?;
        if l == 1 {
            return Ok(lower);
        }
        let prev = self.corner(l - 1).upper.clone().unwrap_or_else(|| {
            // a dicritical P_{l−1} meets P_l at a regular point
            Scalar::zero()
        });
        Ok(lower + prev)
    }

    /// Sum of all indices on `P_l` at completion.
    pub fn index_sum(&self, l: usize) -> Option<Scalar> {
        let mut s = self.corner_sum(l).ok()?;
        for p in &self.points[l - 1] {
            s = s + weighted(p.index.as_ref()?, p.copies)?;
        }
        Some(s)
    }
}

fn weighted(v: &Scalar, copies: usize) -> Option<Scalar> {
    if copies == 1 {
        return Some(v.clone());
    }
    if let Some(r) = v.to_rational() {
        return Some(Scalar::rational(r * Q::from_integer((copies as i64).into())));
    }
    (v.field_degree() == copies).then(|| Scalar::rational(v.trace()))
}

fn positive(v: &Scalar) -> bool {
    v.to_rational().is_some_and(|r| r.is_positive())
}

/// Orders the chain's components from the parent inward through final corners.
fn order(report: &ResolutionReport, rec: &ChainRecord) -> Result<Vec<usize>> {
    let members: BTreeSet<usize> = rec.components.iter().copied().collect();
    let mut path = Vec::new();
    let mut cur = rec.parent;
    let mut seen = BTreeSet::new();
    loop {
        let comp = report.component(cur).ok_or_else(|| Error::MissingIndex(format!("component E{cur}")))?;
        let next: Vec<usize> = comp
            .corners
            .iter()
            .map(|k| k.neighbor)
            .filter(|n| members.contains(n) && !seen.contains(n))
            .collect();
        match next.as_slice() {
            [] => break,
            [n] => {
                seen.insert(*n);
                path.push(*n);
                cur = *n;
            }
            _ => return Err(Error::MissingIndex(format!("chain {} branches at E{cur}", rec.id))),
        }
    }
    if path.len() != members.len() {
        return Err(Error::MissingIndex(format!("chain {} is not a path from E{}", rec.id, rec.parent)));
    }
    path.reverse();
    Ok(path)
}

/// Rebuilds every chain of a report, with each component's points as they
/// were when its chain was completed.
pub fn extract_chains(report: &ResolutionReport) -> Result<Vec<LinearChain>> {
    report.chains.iter().map(|rec| extract_one(report, rec)).collect()
}

fn extract_one(report: &ResolutionReport, rec: &ChainRecord) -> Result<LinearChain> {
    let comps = order(report, rec)?;
    let m = comps.len();
    let parent = report.component(rec.parent).ok_or_else(|| Error::MissingIndex(format!("E{}", rec.parent)))?;
    let dicritical: Vec<bool> = comps.iter().map(|&c| report.component(c).is_some_and(|k| k.dicritical)).collect();
    let weights: Vec<i64> = comps
        .iter()
        .map(|c| rec.weights_at_completion.get(c).copied().ok_or_else(|| Error::MissingIndex(format!("weight of E{c}"))))
        .collect::<Result<_>>()?;
    let mut corners = Vec::with_capacity(m);
    for l in 1..=m {
        let lo = comps[l - 1];
        let hi = if l == m { rec.parent } else { comps[l] };
        let pt = report
            .corner_between(lo, hi)
            .ok_or_else(|| Error::MissingIndex(format!("corner of E{lo} and E{hi}")))?;
        corners.push(ChainCorner {
            point: pt.id,
            class: pt.class,
            lower: pt.indices.get(&lo).cloned(),
            upper: pt.indices.get(&hi).cloned(),
        });
    }
    let children: Vec<&ChainRecord> = report.chains.iter().filter(|c| c.parent_chain == Some(rec.id)).collect();
    let mut points = Vec::with_capacity(m);
    for &c in &comps {
        let comp = report.component(c).expect("ordered from the report");
        let mut here = Vec::new();
        for &pid in &comp.singularities {
            let p = report.point(pid).expect("listed point");
            if p.corner {
                continue;
            }
            here.push(ChainPoint {
                point: pid,
                class: p.class,
                index: p.indices.get(&c).cloned(),
                copies: p.orbit_degree / comp.orbit_degree,
                child_chain: None,
                in_zeta: false,
            });
        }
        for ch in children.iter().filter(|ch| ch.parent == c) {
            let p = report.any_point(ch.origin).ok_or_else(|| Error::MissingIndex(format!("origin {}", ch.origin)))?;
            here.push(ChainPoint {
                point: ch.origin,
                class: p.class,
                index: ch.origin_pre_index.clone(),
                copies: p.orbit_degree / comp.orbit_degree,
                child_chain: Some(ch.id),
                in_zeta: false,
            });
        }
        here.sort_by_key(|p| p.point);
        points.push(here);
    }
    let mut c = Vec::with_capacity(m);
    let mut kbar = Vec::with_capacity(m);
    for (l, pts) in points.iter_mut().enumerate() {
        let mut sum = Scalar::zero();
        for p in pts.iter_mut() {
            if let Some(v) = p.index.as_ref().filter(|v| p.class.is_singular() && positive(v)) {
                p.in_zeta = true;
                sum = sum + weighted(v, p.copies).expect("rational");
            }
        }
        kbar.push(Scalar::rational(Q::from_integer(weights[l].into())) + sum.clone());
        c.push(sum);
    }
    Ok(LinearChain {
        id: rec.id,
        origin: rec.origin,
        parent: rec.parent,
        parent_dicritical: parent.dicritical,
        components: comps,
        dicritical,
        weights,
        corners,
        points,
        c,
        kbar,
        n_r: rec.n_r,
        origin_pre_index: rec.origin_pre_index.clone(),
        children: children.iter().map(|c| c.id).collect(),
    })
}

/// Which clause of the minimality definition a corner satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    Regular,
    SaddleNode,
    Resonant,
}

/// Clause satisfied by `r_l`, if any.
pub fn corner_clause(chain: &LinearChain, l: usize) -> Result<Option<Clause>> {
    let r = chain.corner(l);
    let upper_dicritical = if l == chain.len() { chain.parent_dicritical } else { chain.dicritical[l] };
    Ok(match r.class {
        SingularClass::Regular => Some(Clause::Regular),
        SingularClass::SaddleNode => match &r.upper {
            Some(v) => v.is_zero().then_some(Clause::SaddleNode),
            None if upper_dicritical => None,
            None => return Err(Error::MissingIndex(format!("r_{l} along P_{}", l + 1))),
        },
        SingularClass::NondegenerateResonant => {
            let target = -chain.kbar[l - 1].clone();
            (chain.corner_sum(l)? == target).then_some(Clause::Resonant)
        }
        _ => None,
    })
}

/// Every corner is regular, a saddle-node with zero index along `P_{l+1}`, or
/// resonant with `i_{r_l}(P_l) + i_{r_{l−1}}(P_l) = −k̄_l`.
pub fn is_minimal(chain: &LinearChain) -> Result<bool> {
    is_minimal_from(chain, 1)
}

/// Minimality of the sub-chain `P_start, …, P_m`, reindexed from 1.
pub fn is_minimal_from(chain: &LinearChain, start: usize) -> Result<bool> {
    for l in start..=chain.len() {
        if corner_clause(chain, l)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
