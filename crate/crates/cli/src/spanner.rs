use serde::Serialize;
use spanex_core::bounds::spanner_lightness_bound;
use spanex_core::graph::{minimum_spanning_tree, shortest_path_distances};
use spanex_core::oracle::{brute_force_optspan, OPTSPAN_MAX_EDGES};
use spanex_core::spanner::{lightness, verify_edge_stretch, verify_mst_containment, verify_spanner_minimality};
use spanex_core::{greedy_spanner, Distance, EdgeId, EdgeSubset, Graph, Instance, Rational};

use crate::config::{Check, Checks};
use crate::report::{float, Verdict, Verdicts};

#[derive(Clone, Debug, Serialize)]
pub struct SpannerRow {
    pub instance: String,
    pub family: &'static str,
    pub n: usize,
    pub m: usize,
    pub genus: Option<u32>,
    pub epsilon: Rational,
    pub epsilon_f: f64,
    pub spanner_edges: usize,
    /// Edge removed before verification (fault injection).
    pub dropped_edge: Option<EdgeId>,
    pub weight: Rational,
    pub mst_weight: Rational,
    pub lightness: Rational,
    pub lightness_f: f64,
    pub bound: Option<Rational>,
    pub bound_f: Option<f64>,
    /// Minimum lightness over all spanners, for small inputs when the
    /// `optspan` check is enabled.
    pub optspan: Option<Rational>,
    /// `max_e d_H(u, v) / w(e)` over the input edges; empty when the
    /// spanner disconnects the graph.
    pub stretch_certificate: Option<Rational>,
    pub stretch_certificate_f: Option<f64>,
    /// Input edges whose stretch exceeds `1+ε`, space separated.
    pub stretch_violations: String,
    pub lightness_check: Verdict,
    pub stretch: Verdict,
    pub minimality: Verdict,
    pub mst_containment: Verdict,
    pub optspan_check: Verdict,
    pub pass: bool,
}

impl Verdicts for SpannerRow {
    fn verdicts(&self) -> Vec<(Check, Verdict)> {
        vec![
            (Check::Lightness, self.lightness_check),
            (Check::Stretch, self.stretch),
            (Check::Minimality, self.minimality),
            (Check::MstContainment, self.mst_containment),
            (Check::Optspan, self.optspan_check),
        ]
    }
}

/// Builds the greedy spanner and verifies it; `drop_edge` removes one
/// spanner edge first, to show the checks catch a broken spanner.
pub fn spanner(inst: &Instance, epsilon: Rational, drop_edge: Option<EdgeId>, checks: &Checks) -> anyhow::Result<SpannerRow> {
    let g = &inst.graph;
    let built = greedy_spanner(g, epsilon)?;
    let mut h = built.edges.clone();
    let dropped_edge = drop_edge.filter(|&e| h.contains(e));
    if let Some(e) = dropped_edge {
        h = h.without(e);
    }
    let weight = h.weight(g)?;
    let mst_weight = minimum_spanning_tree(g)?.weight(g)?;
    let light = if dropped_edge.is_some() { lightness(g, &h)? } else { built.lightness };
    let bound = inst.genus.map(|genus| spanner_lightness_bound(genus, epsilon));

    let edge_stretch = verify_edge_stretch(g, &h, epsilon)?;
    let certificate = if dropped_edge.is_some() { stretch_certificate(g, &h)? } else { Some(built.stretch_certificate) };
    let (h_graph, _) = g.subgraph(&h)?;
    let minimality = verify_spanner_minimality(&h_graph, epsilon)?;
    let containment = verify_mst_containment(g, &h)?;
    // exponential in m, so only on request
    let optspan = if checks.optspan && g.edge_count() <= OPTSPAN_MAX_EDGES {
        Some(brute_force_optspan(g, epsilon)?)
    } else {
        None
    };

    let mut row = SpannerRow {
        instance: inst.id.clone(),
        family: inst.spec.family.name(),
        n: g.vertex_count(),
        m: g.edge_count(),
        genus: inst.genus,
        epsilon,
        epsilon_f: float(epsilon),
        spanner_edges: h.len(),
        dropped_edge,
        weight,
        mst_weight,
        lightness: light,
        lightness_f: float(light),
        bound,
        bound_f: bound.map(float),
        optspan,
        stretch_certificate: certificate,
        stretch_certificate_f: certificate.map(float),
        stretch_violations: edge_stretch.violations.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "),
        lightness_check: bound.map_or(Verdict::Skipped, |b| Verdict::of(light <= b)),
        stretch: Verdict::of(edge_stretch.passed()),
        minimality: Verdict::of(minimality.passed()),
        mst_containment: Verdict::of(containment.passed()),
        optspan_check: optspan.map_or(Verdict::Skipped, |o| Verdict::of(o <= light)),
        pass: true,
    };
    row.pass = row.passes(checks);
    Ok(row)
}

/// `max_e d_H(u, v) / w(e)`; `None` when `h` leaves some edge's endpoints
/// disconnected.
fn stretch_certificate(g: &Graph, h: &EdgeSubset) -> anyhow::Result<Option<Rational>> {
    let mut best = Rational::one();
    for (e, edge) in g.edges().iter().enumerate() {
        if h.contains(e) || edge.weight.is_zero() {
            continue;
        }
        match shortest_path_distances(g, edge.u, Some(|f: EdgeId| h.contains(f)))?.get(edge.v) {
            Distance::Finite(d) => best = best.max(d / edge.weight),
            Distance::Infinite => return Ok(None),
        }
    }
    Ok(Some(best))
}
