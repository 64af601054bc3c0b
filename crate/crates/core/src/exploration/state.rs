use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{floor_ticks, search, Edge, EdgeId, Graph, SearchLimits, Settled, Ticks, VertexId};
use crate::rational::{Distance, Rational};

/// Counts of graph reads made through an [`OnlineView`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub reads: u64,
    /// Reads of edges with no explored endpoint or adjacency of unexplored
    /// vertices. Always zero for a correct online algorithm.
    pub violations: u64,
}

#[derive(Debug, Default)]
struct Audit {
    reads: Cell<u64>,
    violations: Cell<u64>,
}

impl Audit {
    fn note(&self, ok: bool) {
        self.reads.set(self.reads.get() + 1);
        if !ok {
            self.violations.set(self.violations.get() + 1);
        }
    }
}

/// What the agent knows so far.
///
/// A vertex is explored once the agent has stood on it; its neighbours are
/// learned. Boundary edges have exactly one explored endpoint.
#[derive(Debug)]
pub struct ExplorationState {
    start: VertexId,
    explored: Vec<bool>,
    learned: Vec<bool>,
    explored_count: usize,
    boundary: BTreeSet<EdgeId>,
    /// Boundary edges entering each unexplored vertex.
    boundary_into: HashMap<VertexId, Vec<EdgeId>>,
    /// Lightest boundary edge weight entering each unexplored vertex.
    /// Weight (in ticks) of the lightest boundary edge entering each
    /// vertex; `Ticks::MAX` when there is none.
    lightest_into: Vec<Ticks>,
    position: VertexId,
    /// Every `(edge, blocker)` pair ever recorded.
    recorded: FxHashSet<(EdgeId, VertexId)>,
    /// For each vertex, the edges it was recorded as blocking, in
    /// recording order.
    waiting_on: Vec<Vec<EdgeId>>,
    cost_so_far: Rational,
    audit: Audit,
}

/// Access to the graph restricted to what the agent may know: adjacency of
/// explored vertices and edges with an explored endpoint. Every read is
/// audited against the current state.
pub(crate) struct OnlineView<'g, 's> {
    graph: &'g Graph,
    state: &'s ExplorationState,
}

impl<'g> OnlineView<'g, '_> {
    pub(crate) fn incident(&self, v: VertexId) -> &'g [EdgeId] {
        self.state.audit.note(self.state.explored[v]);
        self.graph.incident(v)
    }

    pub(crate) fn edge(&self, e: EdgeId) -> &'g Edge {
        let edge = self.graph.edge(e);
        self.state.audit.note(self.state.explored[edge.u] || self.state.explored[edge.v]);
        edge
    }
}

impl ExplorationState {
    /// Fresh state with the agent standing on (and having explored) `start`.
    pub fn new(g: &Graph, start: VertexId) -> Result<ExplorationState> {
        g.check_vertex(start)?;
        let mut state = ExplorationState {
            start,
            explored: vec![false; g.vertex_count()],
            learned: vec![false; g.vertex_count()],
            explored_count: 0,
            boundary: BTreeSet::new(),
            boundary_into: HashMap::new(),
            lightest_into: vec![Ticks::MAX; g.vertex_count()],
            position: start,
            recorded: FxHashSet::default(),
            waiting_on: vec![Vec::new(); g.vertex_count()],
            cost_so_far: Rational::zero(),
            audit: Audit::default(),
        };
        state.mark_explored(g, start)?;
        Ok(state)
    }

    pub(crate) fn view<'g>(&self, g: &'g Graph) -> OnlineView<'g, '_> {
        OnlineView { graph: g, state: self }
    }

    /// Marks `v` explored. `v` must be the start or a learned vertex.
    pub fn mark_explored(&mut self, g: &Graph, v: VertexId) -> Result<()> {
        g.check_vertex(v)?;
        if self.explored[v] {
            return Ok(());
        }
        if v != self.start && !self.learned[v] {
            return Err(Error::State(format!("vertex {v} is not learned and cannot be explored")));
        }
        self.explored[v] = true;
        self.explored_count += 1;
        for e in self.boundary_into.remove(&v).unwrap_or_default() {
            self.boundary.remove(&e);
        }
        self.lightest_into[v] = Ticks::MAX;
        let incident = self.view(g).incident(v);
        for &e in incident {
            let edge = self.view(g).edge(e);
            let x = edge.other(v);
            if self.explored[x] {
                continue;
            }
            self.learned[x] = true;
            self.boundary.insert(e);
            self.boundary_into.entry(x).or_default().push(e);
            self.lightest_into[x] = self.lightest_into[x].min(g.ticks(e));
        }
        Ok(())
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn position(&self) -> VertexId {
        self.position
    }

    pub(crate) fn set_position(&mut self, v: VertexId) {
        self.position = v;
    }

    pub fn cost_so_far(&self) -> Rational {
        self.cost_so_far
    }

    pub(crate) fn add_cost(&mut self, w: Rational) {
        self.cost_so_far += w;
    }

    pub fn is_explored(&self, v: VertexId) -> bool {
        self.explored[v]
    }

    pub fn is_learned(&self, v: VertexId) -> bool {
        self.learned[v]
    }

    pub fn explored_count(&self) -> usize {
        self.explored_count
    }

    pub fn all_explored(&self) -> bool {
        self.explored_count == self.explored.len()
    }

    pub fn boundary(&self) -> &BTreeSet<EdgeId> {
        &self.boundary
    }

    /// Recorded blockers of each edge that was ever found blocked.
    pub fn blocker_records(&self) -> BTreeMap<EdgeId, BTreeSet<VertexId>> {
        let mut out: BTreeMap<EdgeId, BTreeSet<VertexId>> = BTreeMap::new();
        for &(e, b) in &self.recorded {
            out.entry(e).or_default().insert(b);
        }
        out
    }

    pub fn audit(&self) -> AuditSummary {
        AuditSummary { reads: self.audit.reads.get(), violations: self.audit.violations.get() }
    }

    /// Boundary edge `e` as `(explored endpoint, unexplored endpoint)`.
    pub fn orient(&self, g: &Graph, e: EdgeId) -> Result<(VertexId, VertexId)> {
        if !self.boundary.contains(&e) {
            return Err(Error::State(format!("edge {e} is not a boundary edge")));
        }
        let edge = self.view(g).edge(e);
        Ok(if self.explored[edge.u] { (edge.u, edge.v) } else { (edge.v, edge.u) })
    }

    /// Boundary edges whose explored endpoint is `v`.
    pub(crate) fn boundary_at(&self, g: &Graph, v: VertexId) -> Vec<EdgeId> {
        let view = self.view(g);
        view.incident(v).iter().copied().filter(|e| self.boundary.contains(e)).collect()
    }

    /// Edges whose recorded blockers include `v`, still on the boundary.
    pub(crate) fn reactivated_by(&self, v: VertexId) -> Vec<EdgeId> {
        self.waiting_on[v].iter().copied().filter(|e| self.boundary.contains(e)).collect()
    }

    pub(crate) fn record_blockers(&mut self, e: EdgeId, blockers: &BTreeSet<VertexId>) {
        for &b in blockers {
            if self.recorded.insert((e, b)) {
                self.waiting_on[b].push(e);
            }
        }
    }

    /// Dijkstra over internally explored paths from `source`: explored
    /// vertices are expanded, other vertices are endpoints only. An
    /// unexplored source leaves through its boundary edges.
    pub(crate) fn internal_search(&self, g: &Graph, source: VertexId, limits: SearchLimits) -> Settled {
        let view = self.view(g);
        search(g, source, limits, |x, out| {
            if self.explored[x] {
                for &e in view.incident(x) {
                    let edge = view.edge(e);
                    out.push((e, edge.other(x), g.ticks(e)));
                }
            } else if x == source {
                for &e in self.boundary_into.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                    let edge = view.edge(e);
                    out.push((e, edge.other(x), g.ticks(e)));
                }
            }
        })
    }

    /// Shortest path between explored vertices using explored vertices only.
    pub(crate) fn explored_path(&self, g: &Graph, from: VertexId, to: VertexId) -> Vec<(EdgeId, VertexId, VertexId)> {
        let view = self.view(g);
        let settled = search(g, from, SearchLimits { bound: None, target: Some(to) }, |x, out| {
            for &e in view.incident(x) {
                let edge = view.edge(e);
                let y = edge.other(x);
                if self.explored[y] {
                    out.push((e, y, g.ticks(e)));
                }
            }
        });
        debug_assert!(settled.contains(to), "explored region is connected");
        settled.path_to(to)
    }

    /// Structural invariants, checked against the full graph (offline).
    pub fn check_invariants(&self, g: &Graph) -> Result<()> {
        let fail = |w: String| Err(Error::InvariantViolation { invariant: "exploration state", witness: w });
        if !self.explored[self.position] {
            return fail(format!("agent at unexplored vertex {}", self.position));
        }
        for v in 0..g.vertex_count() {
            let has_explored_neighbour = g.incident(v).iter().any(|&e| self.explored[g.edge(e).other(v)]);
            if !self.explored[v] && self.learned[v] != has_explored_neighbour {
                return fail(format!("learned flag of vertex {v} disagrees with its neighbourhood"));
            }
            if self.explored[v] && v != self.start && !self.learned[v] {
                return fail(format!("explored vertex {v} was never learned"));
            }
        }
        for (e, edge) in g.edges().iter().enumerate() {
            let is_boundary = self.explored[edge.u] != self.explored[edge.v];
            if is_boundary != self.boundary.contains(&e) {
                return fail(format!("boundary membership of edge {e} is wrong"));
            }
        }
        Ok(())
    }
}

/// Length of a shortest path from `x` to `y` whose internal vertices are all
/// explored. Both endpoints must be learned or explored.
pub fn internally_explored_distance(state: &ExplorationState, g: &Graph, x: VertexId, y: VertexId) -> Result<Distance> {
    for v in [x, y] {
        g.check_vertex(v)?;
        if !state.is_explored(v) && !state.is_learned(v) {
            return Err(Error::Argument(format!("vertex {v} is neither explored nor learned")));
        }
    }
    let settled = state.internal_search(g, x, SearchLimits { bound: None, target: Some(y) });
    Ok(settled.distance(y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    pub blocked: bool,
    /// Unexplored endpoints `v'` of every witness `e' = (u', v')`.
    pub blockers: BTreeSet<VertexId>,
}

/// Whether boundary edge `e = (u, v)` is `delta`-blocked: some boundary edge
/// `e' = (u', v')` with `w(e') < w(e)` has `d(u, v') <= (1 + delta) w(e)`.
pub fn is_blocked(state: &ExplorationState, g: &Graph, e: EdgeId, delta: Rational) -> Result<BlockCheck> {
    let mut cache = BallCache::default();
    Ok(block_checks(state, g, &[e], delta, &mut cache)?.pop().expect("one check per edge"))
}

/// Unexplored vertices within some radius of an explored source, as
/// `(vertex, distance, lightest entering boundary edge)` in ticks.
type Ball = Vec<(VertexId, Ticks, Ticks)>;

/// Balls around sources, valid while the explored set is unchanged.
#[derive(Default)]
pub(crate) struct BallCache {
    explored_count: usize,
    balls: HashMap<VertexId, (Ticks, Ball)>,
}

/// [`is_blocked`] for several boundary edges at once. Edges sharing an
/// explored endpoint share one search, run to the largest of their radii.
pub(crate) fn block_checks(
    state: &ExplorationState,
    g: &Graph,
    edges: &[EdgeId],
    delta: Rational,
    cache: &mut BallCache,
) -> Result<Vec<BlockCheck>> {
    if cache.explored_count != state.explored_count {
        cache.balls.clear();
        cache.explored_count = state.explored_count;
    }
    let stretch = Rational::one() + delta;
    let mut by_source: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let (u, _) = state.orient(g, e)?;
        by_source.entry(u).or_default().push(i);
    }
    let mut out = vec![None; edges.len()];
    for (u, members) in by_source {
        let radius = members.iter().map(|&i| stretch * g.weight(edges[i])).max().expect("non-empty group");
        let radius_ticks = floor_ticks(radius, g.scale());
        let fresh = cache.balls.get(&u).is_none_or(|(r, _)| *r < radius_ticks);
        if fresh {
            let settled = state.internal_search(g, u, SearchLimits { bound: Some(radius), target: None });
            let ball = settled
                .vertices()
                .filter(|&(z, _)| !state.explored[z] && state.lightest_into[z] != Ticks::MAX)
                .map(|(z, d)| (z, d, state.lightest_into[z]))
                .collect();
            cache.balls.insert(u, (radius_ticks, ball));
        }
        let reached = &cache.balls[&u].1;
        for i in members {
            let w = g.ticks(edges[i]);
            let limit = floor_ticks(stretch * g.weight(edges[i]), g.scale());
            let blockers: BTreeSet<VertexId> =
                reached.iter().filter(|&&(_, d, l)| l < w && d <= limit).map(|&(z, _, _)| z).collect();
            out[i] = Some(BlockCheck { blocked: !blockers.is_empty(), blockers });
        }
    }
    Ok(out.into_iter().map(|c| c.expect("every edge checked")).collect())
}
