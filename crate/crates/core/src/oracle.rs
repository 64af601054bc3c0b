//! Brute-force references: exact graph TSP, spanning-tree and spanner
//! enumeration, and exhaustive simple-cycle checks.
//!
//! Everything here is exponential and guarded by hard size limits. The
//! routines deliberately avoid the fast paths used elsewhere in the crate
//! (Floyd–Warshall instead of Dijkstra, subset sweeps instead of greedy
//! choices) so that agreement between the two is meaningful.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    kruskal_forest, minimum_spanning_tree, search, shortest_path_distances, EdgeId, EdgeSubset, Graph,
    SearchLimits, VertexId,
};
use crate::rational::{common_denominator, Distance, Rational};

pub const TSP_MAX_VERTICES: usize = 15;
pub const PERMUTATION_MAX_VERTICES: usize = 9;
pub const OPTSPAN_MAX_EDGES: usize = 20;
pub const TREE_ENUMERATION_MAX_EDGES: usize = 20;
pub const CYCLE_MAX_CYCLOMATIC: usize = 12;

/// An optimal closed walk visiting every vertex; revisits are allowed, so
/// consecutive tour vertices are joined by shortest paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TourResult {
    pub order: Vec<VertexId>,
    pub cost: Rational,
}

/// Held–Karp over the metric closure. Among optimal tours starting at
/// vertex 0, returns the lexicographically smallest visiting order.
pub fn exact_tsp(g: &Graph) -> Result<TourResult> {
    let n = g.vertex_count();
    if n > TSP_MAX_VERTICES {
        return Err(Error::Resource(format!(
            "exact_tsp supports at most {TSP_MAX_VERTICES} vertices (got {n}); use mst_bounds instead"
        )));
    }
    g.require_connected()?;
    if n == 1 {
        return Ok(TourResult { order: vec![0], cost: Rational::zero() });
    }
    let dist: Vec<Vec<Rational>> = (0..n)
        .map(|s| {
            let t = shortest_path_distances(g, s, None::<fn(EdgeId) -> bool>)?;
            Ok(t.dist.iter().map(|d| d.finite().expect("connected")).collect())
        })
        .collect::<Result<_>>()?;

    // best[set][j]: cheapest walk 0 -> ... -> j covering exactly `set`
    // (bits index vertices 1..n, j in set).
    let k = n - 1;
    let full = (1usize << k) - 1;
    let mut best: Vec<Vec<Option<Rational>>> = vec![vec![None; k]; 1 << k];
    for j in 0..k {
        best[1 << j][j] = Some(dist[0][j + 1]);
    }
    for set in 1..=full {
        for j in 0..k {
            let Some(here) = best[set][j] else { continue };
            for next in 0..k {
                if set & (1 << next) != 0 {
                    continue;
                }
                let cand = here + dist[j + 1][next + 1];
                let slot = &mut best[set | (1 << next)][next];
                if slot.is_none_or(|s| cand < s) {
                    *slot = Some(cand);
                }
            }
        }
    }
    let cost = (0..k).map(|j| best[full][j].unwrap() + dist[j + 1][0]).min().unwrap();

    // Walk forward from 0, taking the smallest next vertex that still
    // completes an optimal tour. A path 0 -> .. -> j over `set` read
    // backwards is a path from j over `set` back to 0.
    let mut order = vec![0];
    let mut remaining = full;
    let mut current: Option<usize> = None;
    let mut to_go = cost;
    while remaining != 0 {
        let step_from = |j: usize| match current {
            None => dist[0][j + 1],
            Some(c) => dist[c + 1][j + 1],
        };
        let next = (0..k)
            .filter(|&j| remaining & (1 << j) != 0)
            .find(|&j| best[remaining][j].is_some_and(|b| step_from(j) + b == to_go))
            .expect("an optimal continuation exists");
        to_go = best[remaining][next].unwrap();
        remaining &= !(1 << next);
        current = Some(next);
        order.push(next + 1);
    }
    Ok(TourResult { order, cost })
}

/// Factorial enumeration over all visiting orders with Floyd–Warshall
/// distances. Independent of [`exact_tsp`].
pub fn brute_force_tsp(g: &Graph) -> Result<Rational> {
    let n = g.vertex_count();
    if n > PERMUTATION_MAX_VERTICES {
        return Err(Error::Resource(format!("permutation TSP supports at most {PERMUTATION_MAX_VERTICES} vertices")));
    }
    g.require_connected()?;
    let mut d = vec![vec![Distance::Infinite; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Distance::Finite(Rational::zero());
    }
    for e in g.edges() {
        let w = Distance::Finite(e.weight);
        d[e.u][e.v] = d[e.u][e.v].min(w);
        d[e.v][e.u] = d[e.v][e.u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Distance::Finite(a), Distance::Finite(b)) = (d[i][k], d[k][j]) {
                    d[i][j] = d[i][j].min(Distance::Finite(a + b));
                }
            }
        }
    }
    let d: Vec<Vec<Rational>> = d.into_iter().map(|r| r.into_iter().map(|x| x.finite().unwrap()).collect()).collect();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Rational> = None;
    permute(&mut rest, 0, &mut |perm| {
        let mut cost = Rational::zero();
        let mut at = 0;
        for &v in perm {
            cost += d[at][v];
            at = v;
        }
        cost += d[at][0];
        if best.is_none_or(|b| cost < b) {
            best = Some(cost);
        }
    });
    Ok(best.unwrap_or_else(Rational::zero))
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// `(w(MST), 2 w(MST))`, which bracket the optimal tour.
pub fn mst_bounds(g: &Graph) -> Result<(Rational, Rational)> {
    let w = minimum_spanning_tree(g)?.weight(g)?;
    Ok((w, w + w))
}

/// Every spanning tree of `g`, by subset enumeration.
pub fn spanning_trees(g: &Graph) -> Result<Vec<EdgeSubset>> {
    let m = g.edge_count();
    if m > TREE_ENUMERATION_MAX_EDGES {
        return Err(Error::Resource(format!("spanning-tree enumeration supports at most {TREE_ENUMERATION_MAX_EDGES} edges")));
    }
    let need = g.vertex_count() - 1;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let mut uf = UnionFind::<usize>::new(g.vertex_count());
        let acyclic = (0..m).filter(|e| mask & (1 << e) != 0).all(|e| uf.union(g.edge(e).u, g.edge(e).v));
        if acyclic {
            out.push(EdgeSubset::from_ids(g, (0..m).filter(|e| mask & (1 << e) != 0))?);
        }
    }
    Ok(out)
}

/// Minimum lightness over all `(1 + epsilon)`-spanners of `g`.
///
/// Sweeps all `2^m` edge subsets in order of weight and returns the first
/// one that spans with stretch at most `1 + epsilon` on every edge of `g`
/// (edgewise stretch bounds the stretch of every pair).
pub fn brute_force_optspan(g: &Graph, epsilon: Rational) -> Result<Rational> {
    let m = g.edge_count();
    if m > OPTSPAN_MAX_EDGES {
        return Err(Error::Resource(format!("brute_force_optspan supports at most {OPTSPAN_MAX_EDGES} edges (got {m})")));
    }
    if !epsilon.is_positive() {
        return Err(Error::Argument("epsilon must be positive".into()));
    }
    let mst_weight = minimum_spanning_tree(g)?.weight(g)?;
    if mst_weight.is_zero() {
        return Err(Error::Degenerate("minimum spanning tree has weight 0".into()));
    }
    let scale = common_denominator(g.edges().iter().map(|e| &e.weight));
    let scaled: Vec<i128> = g.edges().iter().map(|e| e.weight.numer() * (scale / e.weight.denom())).collect();

    let mut sums = vec![0i128; 1usize << m];
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + scaled[low];
    }
    let need = g.vertex_count() - 1;
    let mut masks: Vec<u32> = (0u32..(1u32 << m)).filter(|mask| mask.count_ones() as usize >= need).collect();
    masks.sort_by_key(|&mask| (sums[mask as usize], mask));

    let stretch = Rational::one() + epsilon;
    for mask in masks {
        let inside = |e: EdgeId| mask & (1 << e) != 0;
        let mut uf = UnionFind::<usize>::new(g.vertex_count());
        let mut joined = 0;
        for e in (0..m).filter(|&e| inside(e)) {
            if uf.union(g.edge(e).u, g.edge(e).v) {
                joined += 1;
            }
        }
        if joined != need {
            continue;
        }
        let spans = (0..m).filter(|&e| !inside(e)).all(|e| {
            let edge = g.edge(e);
            let bound = stretch * edge.weight;
            let found = search(g, edge.u, SearchLimits { bound: Some(bound), target: Some(edge.v) }, |x, out| {
                for &f in g.incident(x) {
                    if inside(f) {
                        out.push((f, g.edge(f).other(x), g.ticks(f)));
                    }
                }
            });
            found.distance(edge.v).at_most(bound)
        });
        if spans {
            return Ok(Rational::new(sums[mask as usize], scale) / mst_weight);
        }
    }
    unreachable!("the full edge set is always a spanner")
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleViolation {
    pub cycle: Vec<EdgeId>,
    pub edge: EdgeId,
    pub rest_weight: Rational,
    pub limit: Rational,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CycleReport {
    pub cycles: usize,
    pub pairs_checked: usize,
    pub violations: Vec<CycleViolation>,
}

impl CycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All simple cycles of `g`, as sorted edge-id lists.
///
/// Every simple cycle is a sum of fundamental cycles in which each touched
/// vertex has degree two and the edges form one piece; all `2^c`
/// combinations are tried.
pub fn simple_cycles(g: &Graph) -> Result<Vec<Vec<EdgeId>>> {
    let c = g.cyclomatic_number();
    if c > CYCLE_MAX_CYCLOMATIC {
        return Err(Error::Resource(format!("cyclomatic number {c} exceeds {CYCLE_MAX_CYCLOMATIC}")));
    }
    let forest = kruskal_forest(g, &EdgeSubset::full(g))?;
    let n = g.vertex_count();

    // root every forest component and remember parent edges and depth
    let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                let y = g.edge(e).other(x);
                if forest.contains(e) && depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((e, x));
                    queue.push_back(y);
                }
            }
        }
    }

    let m = g.edge_count();
    let fundamentals: Vec<Vec<bool>> = (0..m)
        .filter(|&e| !forest.contains(e))
        .map(|e| {
            let mut set = vec![false; m];
            set[e] = true;
            let (mut a, mut b) = (g.edge(e).u, g.edge(e).v);
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                let (f, p) = parent[a].expect("same component");
                set[f] ^= true;
                a = p;
            }
            set
        })
        .collect();

    let mut cycles = Vec::new();
    for combo in 1u32..(1u32 << fundamentals.len()) {
        let mut set = vec![false; m];
        for (i, f) in fundamentals.iter().enumerate() {
            if combo & (1 << i) != 0 {
                for (s, &x) in set.iter_mut().zip(f) {
                    *s ^= x;
                }
            }
        }
        let edges: Vec<EdgeId> = (0..m).filter(|&e| set[e]).collect();
        if is_single_cycle(g, &edges) {
            cycles.push(edges);
        }
    }
    Ok(cycles)
}

fn is_single_cycle(g: &Graph, edges: &[EdgeId]) -> bool {
    let mut degree: HashMap<VertexId, usize> = HashMap::new();
    for &e in edges {
        *degree.entry(g.edge(e).u).or_default() += 1;
        *degree.entry(g.edge(e).v).or_default() += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return false;
    }
    // one piece: a closed walk with all degrees 2 is a single cycle iff
    // |E| = |V| and it is connected
    let mut uf = UnionFind::<usize>::new(g.vertex_count());
    for &e in edges {
        uf.union(g.edge(e).u, g.edge(e).v);
    }
    let mut roots = degree.keys().map(|&v| uf.find(v));
    let first = roots.next();
    edges.len() == degree.len() && roots.all(|r| Some(r) == first)
}

/// Checks `w(C \ {e}) > stretch * w(e)` for every simple cycle `C` and
/// every edge `e` on it.
pub fn enumerate_cycles_check(g: &Graph, stretch: Rational) -> Result<CycleReport> {
    let cycles = simple_cycles(g)?;
    let mut report = CycleReport { cycles: cycles.len(), ..Default::default() };
    for cycle in cycles {
        let total: Rational = cycle.iter().map(|&e| g.weight(e)).sum();
        for &e in &cycle {
            report.pairs_checked += 1;
            let rest = total - g.weight(e);
            let limit = stretch * g.weight(e);
            if rest <= limit {
                report.violations.push(CycleViolation { cycle: cycle.clone(), edge: e, rest_weight: rest, limit });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{graph, int};

    #[test]
    fn tsp_small_cases() {
        let edge = graph(2, &[(0, 1, 5)]);
        assert_eq!(exact_tsp(&edge).unwrap().cost, int(10));
        let tri = graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        let tour = exact_tsp(&tri).unwrap();
        assert_eq!(tour.cost, int(3));
        assert_eq!(tour.order, vec![0, 1, 2]);
        assert_eq!(exact_tsp(&graph(1, &[])).unwrap().cost, int(0));
    }

    #[test]
    fn tsp_on_tree_is_double_weight() {
        let g = graph(5, &[(0, 1, 2), (1, 2, 3), (1, 3, 1), (0, 4, 7)]);
        assert_eq!(exact_tsp(&g).unwrap().cost, int(26));
        assert_eq!(mst_bounds(&g).unwrap(), (int(13), int(26)));
        assert_eq!(brute_force_tsp(&g).unwrap(), int(26));
    }

    #[test]
    fn tsp_order_is_lexicographic() {
        // unit 4-cycle: 0-1-2-3 and 0-3-2-1 are both optimal
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(exact_tsp(&g).unwrap().order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn tsp_guard() {
        let edges: Vec<_> = (0..15).map(|i| (i, i + 1, 1)).collect();
        assert!(matches!(exact_tsp(&graph(16, &edges)), Err(Error::Resource(_))));
    }

    #[test]
    fn optspan_cases() {
        let tree = graph(4, &[(0, 1, 1), (1, 2, 2), (1, 3, 3)]);
        assert_eq!(brute_force_optspan(&tree, int(1)).unwrap(), int(1));
        let c4 = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(brute_force_optspan(&c4, int(1)).unwrap(), Rational::new(4, 3));
        // with stretch 3 the 3-edge detour suffices
        assert_eq!(brute_force_optspan(&c4, int(2)).unwrap(), int(1));
    }

    #[test]
    fn cycles_of_k4() {
        let k4 = graph(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        // 4 triangles and 3 four-cycles
        assert_eq!(simple_cycles(&k4).unwrap().len(), 7);
    }

    #[test]
    fn cycle_check_cases() {
        let tree = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        let r = enumerate_cycles_check(&tree, int(2)).unwrap();
        assert!(r.passed() && r.cycles == 0);
        let c4 = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        let r = enumerate_cycles_check(&c4, int(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 4);
        let r = enumerate_cycles_check(&c4, int(3)).unwrap();
        assert_eq!(r.violations.len(), 4);
    }

    #[test]
    fn parallel_edges_form_a_cycle() {
        let g = graph(2, &[(0, 1, 1), (0, 1, 5)]);
        assert_eq!(simple_cycles(&g).unwrap(), vec![vec![0, 1]]);
    }
}
