use petgraph::unionfind::UnionFind;

use super::{EdgeId, EdgeSubset, Graph};
use crate::error::Result;

/// Kruskal over all edges, ties broken by ascending edge id.
pub fn minimum_spanning_tree(g: &Graph) -> Result<EdgeSubset> {
    g.require_connected()?;
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| g.weight(a).cmp(&g.weight(b)).then(a.cmp(&b)));
    Ok(kruskal(g, order))
}

/// A minimum spanning tree sharing as many edges as possible with
/// `preferred`.
///
/// Within each weight class preferred edges are offered first. Edges of one
/// weight class form a matroid over the contracted forest built so far, so
/// the greedy choice maximises the overlap without giving up minimality.
pub fn mst_maximizing_overlap(g: &Graph, preferred: &EdgeSubset) -> Result<EdgeSubset> {
    preferred.check_parent(g)?;
    g.require_connected()?;
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| {
        g.weight(a)
            .cmp(&g.weight(b))
            .then(preferred.contains(b).cmp(&preferred.contains(a)))
            .then(a.cmp(&b))
    });
    Ok(kruskal(g, order))
}

/// Minimum spanning forest of the subgraph `within` (Kruskal, ties by id).
pub fn kruskal_forest(g: &Graph, within: &EdgeSubset) -> Result<EdgeSubset> {
    within.check_parent(g)?;
    let mut order: Vec<EdgeId> = within.ids().collect();
    order.sort_by(|&a, &b| g.weight(a).cmp(&g.weight(b)).then(a.cmp(&b)));
    Ok(kruskal(g, order))
}

fn kruskal(g: &Graph, order: Vec<EdgeId>) -> EdgeSubset {
    let mut uf = UnionFind::<usize>::new(g.vertex_count());
    let mut tree = EdgeSubset::empty(g);
    for e in order {
        let edge = g.edge(e);
        if uf.union(edge.u, edge.v) {
            tree.insert(e);
            if tree.len() + 1 == g.vertex_count() {
                break;
            }
        }
    }
    tree
}
