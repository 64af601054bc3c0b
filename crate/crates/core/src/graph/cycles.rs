use std::collections::VecDeque;

use super::{EdgeId, EdgeSubset, Graph};
use crate::error::{Error, Result};

/// The unique cycle of `tree ∪ {e}`, starting with `e` (walked `u -> v`) and
/// continuing along the tree path from `v` back to `u`.
pub fn fundamental_cycle(g: &Graph, tree: &EdgeSubset, e: EdgeId) -> Result<Vec<EdgeId>> {
    tree.check_parent(g)?;
    let edge = *g.try_edge(e)?;
    if tree.contains(e) {
        return Err(Error::Argument(format!("edge {e} is a tree edge and closes no cycle")));
    }
    if tree.len() + 1 != g.vertex_count() {
        return Err(Error::Argument(format!(
            "tree has {} edges, a spanning tree needs {}",
            tree.len(),
            g.vertex_count() - 1
        )));
    }

    // BFS from u through tree edges; then read the path back from v.
    let mut parent: Vec<Option<(EdgeId, usize)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[edge.u] = true;
    let mut queue = VecDeque::from([edge.u]);
    while let Some(x) = queue.pop_front() {
        for &f in g.incident(x) {
            if !tree.contains(f) {
                continue;
            }
            let y = g.edge(f).other(x);
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((f, x));
                queue.push_back(y);
            }
        }
    }
    if !seen[edge.v] {
        return Err(Error::Argument("tree does not span the graph".into()));
    }

    let mut cycle = vec![e];
    let mut x = edge.v;
    while x != edge.u {
        let (f, p) = parent[x].expect("bfs parent");
        cycle.push(f);
        x = p;
    }
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::graph;

    #[test]
    fn triangle_cycle() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        let tree = EdgeSubset::from_ids(&g, [0, 1]).unwrap();
        assert_eq!(fundamental_cycle(&g, &tree, 2).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn square_with_chord() {
        // square 0-1-2-3-0, chord 0-2; tree is the path 0-1-2-3
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 1)]);
        let tree = EdgeSubset::from_ids(&g, [0, 1, 2]).unwrap();
        assert_eq!(fundamental_cycle(&g, &tree, 4).unwrap(), vec![4, 1, 0]);
        assert_eq!(fundamental_cycle(&g, &tree, 3).unwrap(), vec![3, 0, 1, 2]);
    }

    #[test]
    fn tree_edge_rejected() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        let tree = EdgeSubset::from_ids(&g, [0, 1]).unwrap();
        assert!(matches!(fundamental_cycle(&g, &tree, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn parallel_edge_cycle() {
        let g = graph(2, &[(0, 1, 1), (0, 1, 2)]);
        let tree = EdgeSubset::from_ids(&g, [0]).unwrap();
        assert_eq!(fundamental_cycle(&g, &tree, 1).unwrap(), vec![1, 0]);
    }
}
