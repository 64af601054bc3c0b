//! The long-cycle property shared by greedy spanners and `B ∪ MST_B`:
//! removing any edge `e = (u, v)` pushes `d(u, v)` above `stretch * w(e)`.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{search, EdgeId, EdgeSubset, Graph, SearchLimits};
use crate::rational::{Distance, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct EdgeSlack {
    pub edge: EdgeId,
    /// Distance between the endpoints once the edge is removed.
    pub detour: Distance,
    /// `stretch * w(e)`; the detour must be strictly longer.
    pub limit: Rational,
}

impl EdgeSlack {
    pub fn holds(&self) -> bool {
        self.detour.exceeds(self.limit)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MinimalityReport {
    pub edges: Vec<EdgeSlack>,
    pub violations: Vec<EdgeId>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every edge of `subset` (as a subgraph of `g`) for the long-cycle
/// property under `stretch`.
pub fn check_minimality(g: &Graph, subset: &EdgeSubset, stretch: Rational) -> Result<MinimalityReport> {
    subset.check_parent(g)?;
    let mut report = MinimalityReport::default();
    for e in subset.ids() {
        let edge = g.edge(e);
        let limit = stretch * edge.weight;
        let settled = search(g, edge.u, SearchLimits { bound: None, target: Some(edge.v) }, |x, out| {
            for &f in g.incident(x) {
                if f != e && subset.contains(f) {
                    out.push((f, g.edge(f).other(x), g.ticks(f)));
                }
            }
        });
        let detour = settled.distance(edge.v);
        let slack = EdgeSlack { edge: e, detour, limit };
        if !slack.holds() {
            report.violations.push(e);
        }
        report.edges.push(slack);
    }
    Ok(report)
}
