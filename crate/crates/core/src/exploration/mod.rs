//! Online graph exploration: the `Blocking_δ` algorithm, a nearest-neighbour
//! baseline, and post-run verification of the cost and cycle guarantees.

mod blocking;
mod nearest;
mod state;
mod verify;

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};
use crate::rational::Rational;

pub use blocking::run_blocking;
pub use nearest::run_nearest_neighbor;
pub use state::{internally_explored_distance, is_blocked, AuditSummary, BlockCheck, ExplorationState};
pub use verify::{
    verify_blocking_cycle_property, verify_charges, verify_cost_chain, ChargeReport, CostChainReport, CycleProperty,
    EdgeCharge,
};

/// How to choose among equally admissible edges, which the algorithm leaves
/// open.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// Smallest edge id.
    #[default]
    ByEdgeId,
    /// Scripted preference order: listed edges first, in list order; the
    /// rest afterwards by id.
    Adversarial(Vec<EdgeId>),
    /// A seeded random priority over all edges.
    Random(u64),
}

impl TieBreak {
    pub(crate) fn ranker(&self, g: &Graph) -> TieRanker {
        let m = g.edge_count();
        let rank = match self {
            TieBreak::ByEdgeId => None,
            TieBreak::Adversarial(script) => {
                let mut rank: HashMap<EdgeId, u64> = HashMap::new();
                for (pos, &e) in script.iter().enumerate() {
                    rank.entry(e).or_insert(pos as u64);
                }
                let offset = script.len() as u64;
                Some((0..m).map(|e| rank.get(&e).copied().unwrap_or(offset + e as u64)).collect())
            }
            TieBreak::Random(seed) => {
                let mut order: Vec<u64> = (0..m as u64).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                Some(order)
            }
        };
        TieRanker { rank }
    }
}

pub(crate) struct TieRanker {
    rank: Option<Vec<u64>>,
}

impl TieRanker {
    pub(crate) fn key(&self, e: EdgeId) -> (u64, EdgeId) {
        match &self.rank {
            None => (e as u64, e),
            Some(r) => (r[e], e),
        }
    }

    pub(crate) fn pick(&self, candidates: &[EdgeId]) -> Option<EdgeId> {
        candidates.iter().copied().min_by_key(|&e| self.key(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationParams {
    pub delta: Rational,
    pub start: VertexId,
    #[serde(default)]
    pub tie_break: TieBreak,
    #[serde(default)]
    pub verify_invariants: bool,
}

impl ExplorationParams {
    pub fn new(delta: Rational, start: VertexId) -> ExplorationParams {
        ExplorationParams { delta, start, tie_break: TieBreak::ByEdgeId, verify_invariants: false }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn verified(mut self) -> Self {
        self.verify_invariants = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRole {
    /// Walk to the explored endpoint of the edge about to be taken.
    Approach,
    /// Cross the boundary edge itself.
    TakeBoundary,
    /// Walk back to where the invocation started.
    Return,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Rational,
    pub role: StepRole,
    pub charged_to: EdgeId,
}

/// Why a boundary edge was admitted by the while-condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admission {
    /// Its explored endpoint is the current invocation's vertex.
    Incident,
    /// A recorded blocker of it was the current invocation's vertex.
    Reactivated,
    /// Nearest-neighbour move.
    Nearest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub at: VertexId,
    pub edge: EdgeId,
    pub admission: Admission,
    /// Admissible, unblocked candidates the tie-break chose among.
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum RunParams {
    Blocking(ExplorationParams),
    NearestNeighbor { start: VertexId },
}

impl RunParams {
    pub fn start(&self) -> VertexId {
        match self {
            RunParams::Blocking(p) => p.start,
            RunParams::NearestNeighbor { start } => *start,
        }
    }

    pub fn delta(&self) -> Option<Rational> {
        match self {
            RunParams::Blocking(p) => Some(p.delta),
            RunParams::NearestNeighbor { .. } => None,
        }
    }
}

/// Every edge traversal of one run, each attributed to the boundary edge
/// it is charged to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraversalLog {
    pub params: RunParams,
    pub steps: Vec<Step>,
    pub total_cost: Rational,
    #[serde(rename = "boundary_edges")]
    pub taken_boundary: EdgeSubset,
    pub decisions: Vec<Decision>,
    pub audit: AuditSummary,
    /// Vertices explored at the end (all of them for a connected graph).
    pub explored: usize,
    pub final_position: VertexId,
}

impl TraversalLog {
    pub fn total_weight_of_steps(&self) -> Rational {
        self.steps.iter().map(|s| s.weight).sum()
    }
}

/// A run log together with its verification reports, as written by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord<'a> {
    #[serde(flatten)]
    pub log: &'a TraversalLog,
    pub verification: serde_json::Value,
}
