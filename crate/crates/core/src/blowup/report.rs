use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraicPoint, BiPoly, ChartId, Scalar};
use crate::foliation::SingularityRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Resolved,
    BudgetExceeded,
    UnsupportedField,
}

/// Point where two components meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub neighbor: usize,
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorComponent {
    pub id: usize,
    /// Per conjugate when `orbit_degree > 1`.
    pub self_intersection: i64,
    pub dicritical: bool,
    /// Records of the final configuration lying on the component.
    pub singularities: Vec<usize>,
    pub corners: Vec<Corner>,
    /// Blow-up step that created the component, starting at 1.
    pub birth_step: usize,
    /// Number of conjugate components the entry stands for.
    pub orbit_degree: usize,
    /// Record id of the blown-up point.
    pub center: usize,
}

impl DivisorComponent {
    /// `k` in the chain vocabulary: minus the self-intersection.
    pub fn weight(&self) -> i64 {
        -self.self_intersection
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartRecord {
    pub id: ChartId,
    pub component: usize,
    /// Blown-up point, in the coordinates of its own chart.
    pub center: AlgebraicPoint<Scalar>,
    /// The chart map from these coordinates to the center's, after
    /// translating the center to the origin.
    pub map: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupEvent {
    pub step: usize,
    pub component: usize,
    /// The point as classified just before it was blown up.
    pub center: SingularityRecord<Scalar>,
    pub nu: u32,
    pub multiplicity: u32,
    pub dicritical: bool,
    pub chain: Option<usize>,
    pub new_points: Vec<usize>,
}

/// Index of a corner along an old component, before and after the blow-up
/// that created the corner.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexDropEvent {
    pub step: usize,
    pub component: usize,
    pub center: usize,
    pub corner: usize,
    pub pre: Scalar,
    pub post: Scalar,
}

/// A linear chain as produced by the driver, before any analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub id: usize,
    /// Resolution round in which the chain was started.
    pub round: usize,
    /// The non-corner point the chain grew from.
    pub origin: usize,
    pub origin_location: AlgebraicPoint<Scalar>,
    /// Component carrying the origin point.
    pub parent: usize,
    /// Chain containing `parent`, if any.
    pub parent_chain: Option<usize>,
    /// Components in creation order.
    pub components: Vec<usize>,
    /// Number of blow-ups centered at the origin or its successive corners with `parent`.
    pub n_r: u32,
    /// Index of the origin along `parent` before the first blow-up.
    pub origin_pre_index: Option<Scalar>,
    /// Weights `k = −self-intersection` when the chain was completed.
    pub weights_at_completion: BTreeMap<usize, i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub status: Status,
    pub message: Option<String>,
    pub input: [BiPoly<Scalar>; 2],
    pub blowups: usize,
    pub components: Vec<DivisorComponent>,
    pub singularities: Vec<SingularityRecord<Scalar>>,
    pub history: Vec<BlowupEvent>,
    pub charts: Vec<ChartRecord>,
    pub chains: Vec<ChainRecord>,
    pub index_drops: Vec<IndexDropEvent>,
}

impl ResolutionReport {
    pub fn component(&self, id: usize) -> Option<&DivisorComponent> {
        self.components.iter().find(|c| c.id == id)
    }

    /// Final record with the given id.
    pub fn point(&self, id: usize) -> Option<&SingularityRecord<Scalar>> {
        self.singularities.iter().find(|s| s.id == id)
    }

    /// Any record with the given id, including blown-up centers.
    pub fn any_point(&self, id: usize) -> Option<&SingularityRecord<Scalar>> {
        self.point(id).or_else(|| self.history.iter().map(|e| &e.center).find(|c| c.id == id))
    }

    pub fn chain(&self, id: usize) -> Option<&ChainRecord> {
        self.chains.iter().find(|c| c.id == id)
    }

    /// Final corner record shared by two components.
    pub fn corner_between(&self, a: usize, b: usize) -> Option<&SingularityRecord<Scalar>> {
        let c = self.component(a)?;
        let k = c.corners.iter().find(|k| k.neighbor == b)?;
        self.point(k.point)
    }
}
