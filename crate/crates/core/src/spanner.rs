//! Greedy `(1+ε)`-spanners and their verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    kruskal_forest, minimum_spanning_tree, search, shortest_path_distances, EdgeId, EdgeSubset, Graph,
    SearchLimits, VertexId,
};
use crate::minimality::{check_minimality, MinimalityReport};
use crate::rational::{Distance, Rational};

/// All-pairs stretch verification refuses graphs larger than this.
pub const EXACT_STRETCH_MAX_VERTICES: usize = 2000;

#[derive(Clone, Debug, Serialize)]
pub struct SpannerResult {
    #[serde(rename = "edge_ids")]
    pub edges: EdgeSubset,
    pub epsilon: Rational,
    pub weight: Rational,
    pub lightness: Rational,
    /// `max_e d_H(u, v) / w(e)` over the edges of the input; an upper bound on
    /// the stretch over all vertex pairs.
    pub stretch_certificate: Rational,
}

/// Greedy spanner: edges in (weight, id) order, each kept iff the spanner
/// built so far has `d_H(u, v) > (1+ε) w(e)`.
pub fn greedy_spanner(g: &Graph, epsilon: Rational) -> Result<SpannerResult> {
    if !epsilon.is_positive() {
        return Err(Error::Argument(format!("epsilon must be positive, got {epsilon}")));
    }
    g.require_connected()?;
    let stretch = Rational::one() + epsilon;
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| g.weight(a).cmp(&g.weight(b)).then(a.cmp(&b)));

    let mut kept = EdgeSubset::empty(g);
    let mut adjacency: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for e in order {
        let edge = g.edge(e);
        let limit = stretch * edge.weight;
        let d = bounded_distance(g, &adjacency, edge.u, edge.v, limit);
        if d.exceeds(limit) {
            kept.insert(e);
            adjacency[edge.u].push(e);
            adjacency[edge.v].push(e);
        }
    }

    let weight = kept.weight(g)?;
    let lightness = lightness(g, &kept)?;
    let mut certificate = Rational::one();
    for (e, edge) in g.edges().iter().enumerate() {
        if kept.contains(e) || edge.weight.is_zero() {
            continue;
        }
        let d = bounded_distance(g, &adjacency, edge.u, edge.v, stretch * edge.weight);
        let d = d.finite().expect("greedy keeps every rejected edge within its limit");
        certificate = certificate.max(d / edge.weight);
    }
    Ok(SpannerResult { edges: kept, epsilon, weight, lightness, stretch_certificate: certificate })
}

fn bounded_distance(g: &Graph, adjacency: &[Vec<EdgeId>], from: VertexId, to: VertexId, limit: Rational) -> Distance {
    search(g, from, SearchLimits { bound: Some(limit), target: Some(to) }, |x, out| {
        for &f in &adjacency[x] {
            out.push((f, g.edge(f).other(x), g.ticks(f)));
        }
    })
    .distance(to)
}

/// `w(h) / w(MST)`.
pub fn lightness(g: &Graph, h: &EdgeSubset) -> Result<Rational> {
    let mst = minimum_spanning_tree(g)?.weight(g)?;
    if mst.is_zero() {
        return Err(Error::Degenerate("minimum spanning tree has weight 0; lightness is undefined".into()));
    }
    Ok(h.weight(g)? / mst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum StretchMode {
    Exact,
    Sampled { seed: u64, count: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct StretchViolation {
    pub u: VertexId,
    pub v: VertexId,
    pub in_graph: Rational,
    pub in_spanner: Distance,
}

#[derive(Clone, Debug, Serialize)]
pub struct StretchReport {
    pub pairs_checked: usize,
    /// `None` when some pair is disconnected in the spanner.
    pub max_ratio: Option<Rational>,
    pub violations: Vec<StretchViolation>,
}

impl StretchReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d_H(u, v) <= (1+ε) d_G(u, v)` for all pairs (exact) or for
/// random pairs (sampled).
pub fn verify_spanner_stretch(g: &Graph, h: &EdgeSubset, epsilon: Rational, mode: StretchMode) -> Result<StretchReport> {
    h.check_parent(g)?;
    let n = g.vertex_count();
    let sources: Vec<(VertexId, Vec<VertexId>)> = match mode {
        StretchMode::Exact => {
            if n > EXACT_STRETCH_MAX_VERTICES {
                return Err(Error::Resource(format!(
                    "exact stretch verification is limited to {EXACT_STRETCH_MAX_VERTICES} vertices (got {n}); use sampled mode"
                )));
            }
            (0..n).map(|u| (u, (u + 1..n).collect())).collect()
        }
        StretchMode::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut by_source: std::collections::BTreeMap<VertexId, Vec<VertexId>> = Default::default();
            for _ in 0..count {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                by_source.entry(u).or_default().push(v);
            }
            by_source.into_iter().collect()
        }
    };

    let stretch = Rational::one() + epsilon;
    let mut report = StretchReport { pairs_checked: 0, max_ratio: Some(Rational::one()), violations: Vec::new() };
    for (u, targets) in sources {
        if targets.is_empty() {
            continue;
        }
        let dg = shortest_path_distances(g, u, None::<fn(EdgeId) -> bool>)?;
        let dh = shortest_path_distances(g, u, Some(|e: EdgeId| h.contains(e)))?;
        for v in targets {
            report.pairs_checked += 1;
            let Distance::Finite(base) = dg.get(v) else { continue };
            let spanned = dh.get(v);
            let ratio = match spanned {
                Distance::Infinite => None,
                Distance::Finite(d) if base.is_zero() => Some(if d.is_zero() { Rational::one() } else { d + Rational::one() }),
                Distance::Finite(d) => Some(d / base),
            };
            // zero-length pairs must stay zero-length
            let ok = match spanned {
                Distance::Finite(d) => d <= stretch * base,
                Distance::Infinite => false,
            };
            report.max_ratio = match (report.max_ratio, ratio) {
                (Some(m), Some(r)) => Some(m.max(r)),
                _ => None,
            };
            if !ok {
                report.violations.push(StretchViolation { u, v, in_graph: base, in_spanner: spanned });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeStretchReport {
    pub edges_checked: usize,
    /// Edges `e = (u, v)` of the input with `d_H(u, v) > (1+ε) w(e)`.
    pub violations: Vec<EdgeId>,
}

impl EdgeStretchReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d_H(u, v) <= (1+ε) w(e)` for every edge `e = (u, v)` of `g`,
/// which is equivalent to `h` being a `(1+ε)`-spanner of `g`. Names the
/// offending edges, so it pinpoints an edge missing from a spanner.
pub fn verify_edge_stretch(g: &Graph, h: &EdgeSubset, epsilon: Rational) -> Result<EdgeStretchReport> {
    h.check_parent(g)?;
    let stretch = Rational::one() + epsilon;
    let mut adjacency: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for e in h.ids() {
        let edge = g.edge(e);
        adjacency[edge.u].push(e);
        adjacency[edge.v].push(e);
    }
    let mut violations = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if h.contains(e) {
            continue;
        }
        let limit = stretch * edge.weight;
        if bounded_distance(g, &adjacency, edge.u, edge.v, limit).exceeds(limit) {
            violations.push(e);
        }
    }
    Ok(EdgeStretchReport { edges_checked: g.edge_count(), violations })
}

/// No proper subgraph of `h` is a `(1+ε)`-spanner of `h`: every edge `e`
/// of `h` satisfies `d_{h \ e}(u, v) > (1+ε) w(e)`. The check runs on `h`
/// as a graph of its own.
pub fn verify_spanner_minimality(h: &Graph, epsilon: Rational) -> Result<MinimalityReport> {
    check_minimality(h, &EdgeSubset::full(h), Rational::one() + epsilon)
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub graph_mst_weight: Rational,
    /// `None` when `h` does not span the graph.
    pub spanner_mst_weight: Option<Rational>,
    pub weights_equal: bool,
    /// Kruskal edges of `g` (weight, id order) missing from `h`.
    pub missing_kruskal_edges: Vec<EdgeId>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.weights_equal && self.missing_kruskal_edges.is_empty()
    }
}

/// `h` contains a minimum spanning tree of `g`.
pub fn verify_mst_containment(g: &Graph, h: &EdgeSubset) -> Result<ContainmentReport> {
    h.check_parent(g)?;
    let mst = minimum_spanning_tree(g)?;
    let graph_mst_weight = mst.weight(g)?;
    let forest = kruskal_forest(g, h)?;
    let spanner_mst_weight = (forest.len() + 1 == g.vertex_count()).then(|| forest.weight(g)).transpose()?;
    Ok(ContainmentReport {
        graph_mst_weight,
        spanner_mst_weight,
        weights_equal: spanner_mst_weight == Some(graph_mst_weight),
        missing_kruskal_edges: mst.ids().filter(|&e| !h.contains(e)).collect(),
    })
}
