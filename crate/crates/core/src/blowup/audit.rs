use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::report::{IndexDropEvent, ResolutionReport};
use crate::algebra::{Field, Scalar, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexTheoremRow {
    pub component: usize,
    pub self_intersection: i64,
    pub index_sum: Scalar,
    pub holds: bool,
}

/// Contribution of one record to the index sum of a component: a point
/// standing for several conjugates on a single component counts its trace.
fn contribution(idx: &Scalar, copies: usize) -> Result<Scalar> {
    if copies == 1 {
        return Ok(idx.clone());
    }
    if let Some(v) = idx.to_rational() {
        return Ok(Scalar::rational(v * Q::from_integer((copies as i64).into())));
    }
    if idx.field_degree() == copies {
        return Ok(Scalar::rational(idx.trace()));
    }
    Err(Error::UnsupportedField(format!("index {idx} does not match an orbit of {copies} points")))
}

/// Sums the indices of the final configuration on each nondicritical component
/// and compares with its self-intersection.
pub fn verify_index_theorem(report: &ResolutionReport) -> Result<Vec<IndexTheoremRow>> {
    let mut rows = Vec::new();
    for comp in report.components.iter().filter(|c| !c.dicritical) {
        let mut sum = Scalar::zero();
        for &pid in &comp.singularities {
            let rec = report.point(pid).ok_or_else(|| Error::MissingIndex(format!("record {pid}")))?;
            let idx = rec
                .indices
                .get(&comp.id)
                .ok_or_else(|| Error::MissingIndex(format!("record {pid} along E{}", comp.id)))?;
            sum = sum + contribution(idx, rec.orbit_degree / comp.orbit_degree)?;
        }
        let expected = Scalar::rational(Q::from_integer(comp.self_intersection.into()));
        rows.push(IndexTheoremRow {
            component: comp.id,
            self_intersection: comp.self_intersection,
            holds: sum == expected,
            index_sum: sum,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexDropVerdict {
    pub event: IndexDropEvent,
    pub holds: bool,
}

/// Each blow-up at a point of an invariant component lowers the index along
/// that component by one at the new corner.
pub fn corner_index_drop_check(report: &ResolutionReport) -> Vec<IndexDropVerdict> {
    report
        .index_drops
        .iter()
        .map(|e| IndexDropVerdict { event: e.clone(), holds: e.post == e.pre.clone() - Scalar::one() })
        .collect()
}
