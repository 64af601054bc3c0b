//! Weighted undirected multigraphs with exact weights.

mod cycles;
mod mst;
mod paths;
mod subset;

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

pub use cycles::fundamental_cycle;
pub use mst::{kruskal_forest, minimum_spanning_tree, mst_maximizing_overlap};
pub use paths::{shortest_path_distances, DistanceTable, Restriction};
pub(crate) use paths::{floor_ticks, search, SearchLimits, Settled};
pub use subset::EdgeSubset;

pub type VertexId = usize;
pub type EdgeId = usize;
/// Path lengths in units of `1 / scale`; see [`Graph::ticks`].
pub(crate) type Ticks = i64;

static NEXT_TOKEN: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

impl Edge {
    /// The endpoint opposite to `x`. `x` must be an endpoint.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        debug_assert!(x == self.u || x == self.v);
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Immutable weighted undirected graph. Parallel edges are allowed and keep
/// distinct ids; self-loops and negative weights are rejected.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
    /// Common denominator of all weights; searches run on the integer
    /// weights `weight * scale`.
    scale: i128,
    ticks: Vec<Ticks>,
    token: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Graph {
    /// Builds a graph; edge ids are assigned in iteration order.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Rational)>,
    {
        if vertex_count == 0 {
            return Err(Error::Argument("a graph needs at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut stored = Vec::new();
        for (id, (u, v, weight)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::InvalidVertex { vertex: x, vertex_count });
                }
            }
            if u == v {
                return Err(Error::Argument(format!("edge {id} is a self-loop at vertex {u}")));
            }
            if weight.is_negative() {
                return Err(Error::Argument(format!("edge {id} has negative weight {weight}")));
            }
            adjacency[u].push(id);
            adjacency[v].push(id);
            stored.push(Edge { u, v, weight });
        }
        let (scale, ticks) = integer_weights(&stored)?;
        Ok(Graph {
            vertex_count,
            edges: stored,
            adjacency,
            scale,
            ticks,
            token: NEXT_TOKEN.fetch_add(1, Ordering::Relaxed),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn try_edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::InvalidEdge { edge: e, edge_count: self.edges.len() })
    }

    #[inline]
    pub fn weight(&self, e: EdgeId) -> Rational {
        self.edges[e].weight
    }

    /// Incident edge ids of `v`, ascending.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, vertex_count: self.vertex_count })
        }
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub(crate) fn token(&self) -> u64 {
        self.token
    }

    pub(crate) fn scale(&self) -> i128 {
        self.scale
    }

    /// `w(e) * scale`, an exact integer.
    #[inline]
    pub(crate) fn ticks(&self, e: EdgeId) -> Ticks {
        self.ticks[e]
    }

    /// Cyclomatic number `m - n + c`.
    pub fn cyclomatic_number(&self) -> usize {
        let components = self.components().len();
        self.edge_count() + components - self.vertex_count
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for root in 0..self.vertex_count {
            if seen[root] {
                continue;
            }
            let mut comp = vec![root];
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &e in &self.adjacency[x] {
                    let y = self.edges[e].other(x);
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Errors with the first component not containing vertex 0.
    pub fn require_connected(&self) -> Result<()> {
        let mut comps = self.components();
        if comps.len() == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { component: comps.swap_remove(1) })
        }
    }

    /// The spanning subgraph on the same vertex set with only the edges of
    /// `subset`. Returns the new graph and, for each new edge id, the parent
    /// edge id it came from.
    pub fn subgraph(&self, subset: &EdgeSubset) -> Result<(Graph, Vec<EdgeId>)> {
        subset.check_parent(self)?;
        let ids: Vec<EdgeId> = subset.ids().collect();
        let g = Graph::from_edges(
            self.vertex_count,
            ids.iter().map(|&e| (self.edges[e].u, self.edges[e].v, self.edges[e].weight)),
        )?;
        Ok((g, ids))
    }
}

/// Largest common denominator accepted; keeps every path length far from
/// `Ticks` overflow.
const MAX_SCALE: i128 = 1 << 62;
const MAX_TOTAL_TICKS: i128 = 1 << 62;

fn integer_weights(edges: &[Edge]) -> Result<(i128, Vec<Ticks>)> {
    let scale = common_denominator(edges.iter().map(|e| &e.weight));
    if scale > MAX_SCALE {
        return Err(Error::Resource(format!("weights need a common denominator above 2^62 ({scale})")));
    }
    let mut total: i128 = 0;
    let mut ticks = Vec::with_capacity(edges.len());
    for e in edges {
        let t = e.weight.numer().checked_mul(scale / e.weight.denom());
        let t = t.filter(|&t| t <= MAX_TOTAL_TICKS - total);
        let Some(t) = t else {
            return Err(Error::Resource("total edge weight is too large for exact path lengths".into()));
        };
        total += t;
        ticks.push(t as Ticks);
    }
    Ok((scale, ticks))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn int(n: i128) -> Rational {
        Rational::integer(n)
    }

    pub fn graph(n: usize, edges: &[(usize, usize, i128)]) -> Graph {
        Graph::from_edges(n, edges.iter().map(|&(u, v, w)| (u, v, int(w)))).unwrap()
    }

    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let x = r * cols + c;
                if c + 1 < cols {
                    edges.push((x, x + 1, 1));
                }
                if r + 1 < rows {
                    edges.push((x, x + cols, 1));
                }
            }
        }
        graph(rows * cols, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 0, int(1))]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2, int(1))]),
            Err(Error::InvalidVertex { vertex: 2, .. })
        ));
        assert!(Graph::from_edges(2, [(0, 1, int(-1))]).is_err());
        assert!(Graph::from_edges(0, []).is_err());
    }

    #[test]
    fn parallel_edges_keep_ids() {
        let g = graph(2, &[(0, 1, 1), (1, 0, 2)]);
        assert_eq!(g.incident(0), &[0, 1]);
        assert_eq!(g.edge(1).other(0), 1);
        assert_eq!(g.cyclomatic_number(), 1);
    }

    #[test]
    fn disconnected_names_component() {
        let g = graph(5, &[(0, 1, 1), (2, 3, 1)]);
        match g.require_connected() {
            Err(Error::Disconnected { component }) => assert_eq!(component, vec![2, 3]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
