use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use super::{EdgeId, Graph, Ticks, VertexId};
use crate::error::Result;
use crate::rational::{Distance, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    /// Every edge admissible.
    Unrestricted,
    /// Only edges accepted by a caller-supplied predicate.
    EdgeFilter,
}

/// Exact single-source shortest-path distances.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceTable {
    pub source: VertexId,
    pub dist: Vec<Distance>,
    pub restriction: Restriction,
}

impl DistanceTable {
    pub fn get(&self, v: VertexId) -> Distance {
        self.dist[v]
    }
}

/// Dijkstra over the edges admitted by `edge_filter`; unreachable vertices
/// get [`Distance::Infinite`].
pub fn shortest_path_distances<F>(g: &Graph, source: VertexId, edge_filter: Option<F>) -> Result<DistanceTable>
where
    F: Fn(EdgeId) -> bool,
{
    g.check_vertex(source)?;
    let restriction = if edge_filter.is_some() { Restriction::EdgeFilter } else { Restriction::Unrestricted };
    let settled = search(g, source, SearchLimits::default(), |x, out| {
        for &e in g.incident(x) {
            if edge_filter.as_ref().is_none_or(|f| f(e)) {
                out.push((e, g.edge(e).other(x), g.ticks(e)));
            }
        }
    });
    let mut dist = vec![Distance::Infinite; g.vertex_count()];
    for (v, d) in settled.vertices() {
        dist[v] = Distance::Finite(Rational::new(d as i128, settled.scale));
    }
    Ok(DistanceTable { source, dist, restriction })
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct SearchLimits {
    /// Stop once the frontier exceeds this distance.
    pub bound: Option<Rational>,
    /// Stop once this vertex is settled.
    pub target: Option<VertexId>,
}

/// Arc `(edge, previous vertex)` a vertex was settled through.
pub(crate) type ParentArc = Option<(EdgeId, VertexId)>;

/// Settled vertices of a (possibly truncated) Dijkstra run.
#[derive(Debug, Default)]
pub(crate) struct Settled {
    pub scale: i128,
    /// `(vertex, distance in units of 1/scale, parent arc)` in settling
    /// order; the source comes first.
    pub order: Vec<(VertexId, Ticks, ParentArc)>,
}

impl Settled {
    pub fn ticks(&self, v: VertexId) -> Option<Ticks> {
        self.order.iter().rev().find(|s| s.0 == v).map(|s| s.1)
    }

    pub fn distance(&self, v: VertexId) -> Distance {
        self.ticks(v).map_or(Distance::Infinite, |d| Distance::Finite(Rational::new(d as i128, self.scale)))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.order.iter().any(|s| s.0 == v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, Ticks)> + '_ {
        self.order.iter().map(|s| (s.0, s.1))
    }

    /// Edge sequence from the source to `v`, as `(edge, from, to)` hops.
    pub fn path_to(&self, v: VertexId) -> Vec<(EdgeId, VertexId, VertexId)> {
        let parent: HashMap<VertexId, (EdgeId, VertexId)> =
            self.order.iter().filter_map(|s| s.2.map(|p| (s.0, p))).collect();
        let mut hops = Vec::new();
        let mut x = v;
        while let Some(&(e, prev)) = parent.get(&x) {
            hops.push((e, prev, x));
            x = prev;
        }
        hops.reverse();
        hops
    }
}

/// `floor(x * scale)`, saturated to the `Ticks` range: `d / scale <= x`
/// iff `d <= floor_ticks(x, scale)` for integer `d`.
pub(crate) fn floor_ticks(x: Rational, scale: i128) -> Ticks {
    let s = x * Rational::integer(scale);
    s.numer().div_euclid(s.denom()).clamp(Ticks::MIN as i128, Ticks::MAX as i128) as Ticks
}

/// Dense per-thread buffers reused across searches; only touched entries
/// are reset afterwards.
#[derive(Default)]
struct Scratch {
    tentative: Vec<Ticks>,
    parent: Vec<Option<(EdgeId, VertexId)>>,
    done: Vec<bool>,
    touched: Vec<VertexId>,
    heap: BinaryHeap<Reverse<(Ticks, VertexId)>>,
    arcs: Vec<(EdgeId, VertexId, Ticks)>,
}

impl Scratch {
    fn prepare(&mut self, n: usize) {
        if self.tentative.len() < n {
            self.tentative.resize(n, Ticks::MAX);
            self.parent.resize(n, None);
            self.done.resize(n, false);
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.tentative[v] = Ticks::MAX;
            self.parent[v] = None;
            self.done[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }
}

thread_local! {
    static SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::default());
}

/// Generic Dijkstra over `g`'s integer weights. `expand(x, out)` pushes the
/// arcs `(edge, head, g.ticks(edge))` leaving `x`; pushing nothing makes `x`
/// a terminal. Heap ties break on vertex id so runs are reproducible.
pub(crate) fn search<N>(g: &Graph, source: VertexId, limits: SearchLimits, mut expand: N) -> Settled
where
    N: FnMut(VertexId, &mut Vec<(EdgeId, VertexId, Ticks)>),
{
    let scale = g.scale();
    // d / scale > b  <=>  d > floor(b * scale)
    let bound = limits.bound.map(|b| floor_ticks(b, scale));
    let mut settled = Settled { scale, order: Vec::new() };
    SCRATCH.with(|cell| {
        let mut guard = cell.borrow_mut();
        let sc = &mut *guard;
        sc.prepare(g.vertex_count());
        sc.tentative[source] = 0;
        sc.touched.push(source);
        sc.heap.push(Reverse((0, source)));
        while let Some(Reverse((d, x))) = sc.heap.pop() {
            if sc.done[x] || sc.tentative[x] < d {
                continue;
            }
            if bound.is_some_and(|b| d > b) {
                break;
            }
            sc.done[x] = true;
            settled.order.push((x, d, sc.parent[x]));
            if limits.target == Some(x) {
                break;
            }
            let mut arcs = std::mem::take(&mut sc.arcs);
            arcs.clear();
            expand(x, &mut arcs);
            for &(e, y, w) in &arcs {
                if sc.done[y] {
                    continue;
                }
                let nd = d + w;
                if nd < sc.tentative[y] {
                    if sc.tentative[y] == Ticks::MAX {
                        sc.touched.push(y);
                    }
                    sc.tentative[y] = nd;
                    sc.parent[y] = Some((e, x));
                    sc.heap.push(Reverse((nd, y)));
                }
            }
            sc.arcs = arcs;
        }
        sc.reset();
    });
    settled
}
