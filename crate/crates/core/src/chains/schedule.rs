use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::chain::LinearChain;
use super::verdict::{ChainVerdict, StepReason, VerdictTag};
use crate::algebra::{Field, Scalar, Q};
use crate::blowup::ResolutionReport;
use crate::error::{Error, Result};
use crate::foliation::SingularClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepTag {
    NonzeroIndexPoint,
    CornerPropagation,
    DicriticalEnd,
    ResonantFundamentalDomain,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub component: usize,
    pub tag: StepTag,
    pub chain: Option<usize>,
    /// Component or point the justification leans on.
    pub via: Option<usize>,
}

/// Index of a chain origin along its parent before the chain was created.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OriginCheck {
    pub chain: usize,
    pub origin: usize,
    pub parent: usize,
    pub n_r: u32,
    /// Index along the parent at the final corner with the chain.
    pub post: Option<Scalar>,
    /// Recorded when the origin was classified.
    pub pre_recorded: Option<Scalar>,
    /// `post + n_r`, undoing one unit drop per blow-up.
    pub pre_reconstructed: Option<Scalar>,
    /// `post − n_r`, the subtraction form.
    pub pre_subtractive: Option<Scalar>,
    pub consistent: bool,
    /// `pre_reconstructed ≥ 0`; `None` when not rational or absent.
    pub nonnegative: Option<bool>,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub steps: Vec<ScheduleStep>,
    pub origins: Vec<OriginCheck>,
}

impl Schedule {
    pub fn covers(&self, component: usize) -> bool {
        self.steps.iter().any(|s| s.component == component)
    }
}

fn tag_for(reason: StepReason) -> StepTag {
    match reason {
        StepReason::NonresonantCorner | StepReason::Propagated => StepTag::CornerPropagation,
        StepReason::NonzeroIndexPoint => StepTag::NonzeroIndexPoint,
        StepReason::DicriticalEnd => StepTag::DicriticalEnd,
        StepReason::BackPropagated => StepTag::ResonantFundamentalDomain,
    }
}

pub fn origin_checks(report: &ResolutionReport, chains: &[LinearChain], verdicts: &[ChainVerdict]) -> Vec<OriginCheck> {
    chains
        .iter()
        .map(|ch| {
            let pm = *ch.components.last().expect("nonempty chain");
            let post = report.corner_between(ch.parent, pm).and_then(|p| p.indices.get(&ch.parent).cloned());
            let n = Scalar::rational(Q::from_integer(ch.n_r.into()));
            let pre_reconstructed = post.clone().map(|p| p + n.clone());
            let pre_subtractive = post.clone().map(|p| p - n);
            let nonnegative = pre_reconstructed.as_ref().and_then(|v| v.to_rational()).map(|v| !v.is_negative());
            let minimal = verdicts.iter().any(|v| v.chain == ch.id && v.tag == VerdictTag::Minimal);
            OriginCheck {
                chain: ch.id,
                origin: ch.origin,
                parent: ch.parent,
                n_r: ch.n_r,
                consistent: pre_reconstructed == ch.origin_pre_index,
                pre_recorded: ch.origin_pre_index.clone(),
                post,
                pre_reconstructed,
                pre_subtractive,
                nonnegative,
                minimal,
            }
        })
        .collect()
}

/// Orders extension steps over the whole divisor: chains from the last
/// resolution round inward, then the remaining components, then whatever is
/// reachable through corners.
pub fn extension_schedule(report: &ResolutionReport, chains: &[LinearChain], verdicts: &[ChainVerdict]) -> Result<Schedule> {
    let mut steps: Vec<ScheduleStep> = Vec::new();
    let mut covered = BTreeSet::new();
    let mut push = |steps: &mut Vec<ScheduleStep>, s: ScheduleStep| {
        if covered.insert(s.component) {
            steps.push(s);
        }
    };
    let verdict_of: BTreeMap<usize, &ChainVerdict> = verdicts.iter().map(|v| (v.chain, v)).collect();
    let round_of: BTreeMap<usize, usize> = report.chains.iter().map(|c| (c.id, c.round)).collect();
    let mut order: Vec<&LinearChain> = chains.iter().collect();
    order.sort_by_key(|c| std::cmp::Reverse((round_of.get(&c.id).copied().unwrap_or(0), c.id)));

    for ch in &order {
        let Some(v) = verdict_of.get(&ch.id) else { continue };
        if v.tag != VerdictTag::Extends {
            continue;
        }
        for s in &v.trail {
            let via = s.certificate.as_ref().map(|c| c.witness);
            push(&mut steps, ScheduleStep { component: s.component, tag: tag_for(s.reason), chain: Some(ch.id), via });
        }
    }

    let in_chain: BTreeMap<usize, usize> =
        chains.iter().flat_map(|ch| ch.components.iter().map(move |&c| (c, ch.id))).collect();
    for comp in report.components.iter().filter(|c| !in_chain.contains_key(&c.id)) {
        if comp.dicritical {
            push(&mut steps, ScheduleStep { component: comp.id, tag: StepTag::DicriticalEnd, chain: None, via: None });
            continue;
        }
        let witness = comp.singularities.iter().filter_map(|&p| report.point(p)).find(|p| {
            !p.corner && p.indices.get(&comp.id).is_some_and(|v| !v.is_zero())
        });
        if let Some(p) = witness {
            push(&mut steps, ScheduleStep {
                component: comp.id,
                tag: StepTag::NonzeroIndexPoint,
                chain: None,
                via: Some(p.id),
            });
        }
    }

    for comp in report.components.iter().filter(|c| c.dicritical) {
        push(&mut steps, ScheduleStep { component: comp.id, tag: StepTag::DicriticalEnd, chain: in_chain.get(&comp.id).copied(), via: None });
    }

    loop {
        let mut grew = false;
        for comp in &report.components {
            if steps.iter().any(|s| s.component == comp.id) {
                continue;
            }
            let from = comp.corners.iter().find(|k| steps.iter().any(|s| s.component == k.neighbor));
            if let Some(k) = from {
                let minimal = in_chain
                    .get(&comp.id)
                    .and_then(|id| verdict_of.get(id))
                    .is_some_and(|v| v.tag == VerdictTag::Minimal);
                let resonant = report.point(k.point).is_some_and(|p| p.class == SingularClass::NondegenerateResonant);
                let tag = if minimal && resonant { StepTag::ResonantFundamentalDomain } else { StepTag::CornerPropagation };
                push(&mut steps, ScheduleStep { component: comp.id, tag, chain: in_chain.get(&comp.id).copied(), via: Some(k.neighbor) });
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    let missing: Vec<String> = report
        .components
        .iter()
        .filter(|c| !c.dicritical && !steps.iter().any(|s| s.component == c.id))
        .map(|c| format!("E{}", c.id))
        .collect();
    if !missing.is_empty() {
        return Err(Error::ScheduleIncomplete(missing.join(", ")));
    }
    Ok(Schedule { steps, origins: origin_checks(report, chains, verdicts) })
}
