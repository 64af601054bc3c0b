use std::collections::{BTreeSet, HashSet};

use delaunator::{triangulate, Point};
use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::rational::Rational;

/// Planar points live on the integer grid `[0, 2^COORD_BITS)^2`, scaled into
/// the unit square.
const COORD_BITS: u32 = 24;
/// Euclidean lengths are rounded to multiples of `2^-WEIGHT_BITS`.
const WEIGHT_BITS: u32 = 30;
const PLANAR_RETRIES: u32 = 16;
const CONNECT_RETRIES: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WeightDist {
    Unit,
    /// `low + (high - low) · r / steps` with `r` uniform in `0..=steps`.
    Uniform { low: Rational, high: Rational, steps: u32 },
}

impl WeightDist {
    /// Uniform on `[1, 2]` in steps of `1/1024`.
    pub fn one_to_two() -> WeightDist {
        WeightDist::Uniform { low: Rational::one(), high: Rational::integer(2), steps: 1024 }
    }

    fn validate(&self) -> Result<()> {
        match self {
            WeightDist::Unit => Ok(()),
            WeightDist::Uniform { low, high, steps } => {
                if low.is_negative() || high < low || *steps == 0 {
                    return Err(Error::Argument(format!(
                        "weight range needs 0 <= low <= high and steps >= 1 (got [{low}, {high}], {steps})"
                    )));
                }
                Ok(())
            }
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Rational {
        match self {
            WeightDist::Unit => Rational::one(),
            WeightDist::Uniform { low, high, steps } => {
                let r = rng.gen_range(0..=*steps);
                *low + (*high - *low) * Rational::new(r as i128, *steps as i128)
            }
        }
    }
}

/// The comb tree on which `Blocking_δ` pays quadratically.
#[derive(Clone, Debug)]
pub struct Comb {
    pub graph: Graph,
    pub start: VertexId,
    /// Spine edges in walking order; preferring them makes the agent run
    /// down the whole spine before any light leaf.
    pub script: Vec<EdgeId>,
    pub heavy_weight: Rational,
    pub warnings: Vec<String>,
}

/// Spine `0..2k` of unit edges, a unit leaf on each of the first `k` spine
/// vertices and a leaf of weight `(k+1)/(δ+1)` on each of the last `k`.
/// Leaf `2k + i` hangs off spine vertex `i`. At each spine vertex the leaf
/// edge gets the smaller id, so the default id tie-break is the benign one.
pub fn gen_comb_lower_bound(k: usize, delta: Rational) -> Result<Comb> {
    if k == 0 {
        return Err(Error::Argument("comb needs k >= 1".into()));
    }
    if !delta.is_positive() {
        return Err(Error::Argument(format!("comb needs delta > 0, got {delta}")));
    }
    let heavy = Rational::integer(k as i128 + 1) / (delta + Rational::one());
    let mut warnings = Vec::new();
    if heavy <= Rational::one() {
        warnings.push(format!(
            "heavy weight {heavy} is not above 1 (needs k > delta); heavy edges are never blocked"
        ));
    }
    let n = 4 * k;
    if delta >= Rational::integer(n as i128 - 4) / Rational::integer(4) {
        warnings.push(format!("delta {delta} is not below (n-4)/4 = {}", k - 1));
    }

    let mut edges = Vec::with_capacity(n - 1);
    let mut script = Vec::with_capacity(2 * k - 1);
    for i in 0..2 * k {
        let w = if i < k { Rational::one() } else { heavy };
        edges.push((i, 2 * k + i, w));
        if i + 1 < 2 * k {
            script.push(edges.len());
            edges.push((i, i + 1, Rational::one()));
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    Ok(Comb { graph, start: 0, script, heavy_weight: heavy, warnings })
}

/// Delaunay triangulation of `points` distinct seeded random points in the
/// unit square.
pub fn gen_random_planar(points: usize, seed: u64) -> Result<Graph> {
    if points < 3 {
        return Err(Error::Argument(format!("planar instances need at least 3 points, got {points}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..PLANAR_RETRIES {
        let coords = distinct_points(&mut rng, points);
        let pts: Vec<Point> = coords.iter().map(|&(x, y)| Point { x: x as f64, y: y as f64 }).collect();
        let tri = triangulate(&pts);
        if tri.triangles.is_empty() {
            log::debug!("planar attempt {attempt}: degenerate point set, resampling");
            continue;
        }
        let mut pairs = BTreeSet::new();
        for t in tri.triangles.chunks_exact(3) {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
        let edges = pairs.into_iter().map(|(a, b)| (a, b, euclidean(coords[a], coords[b])));
        let g = Graph::from_edges(points, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
        log::debug!("planar attempt {attempt}: triangulation missed a point, resampling");
    }
    Err(Error::Generation(format!("no non-degenerate point set after {PLANAR_RETRIES} attempts")))
}

fn distinct_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<(i64, i64)> {
    let side = 1i64 << COORD_BITS;
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = (rng.gen_range(0..side), rng.gen_range(0..side));
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

/// Length in the unit square, rounded to the nearest multiple of
/// `2^-WEIGHT_BITS` with integer arithmetic only.
fn euclidean(a: (i64, i64), b: (i64, i64)) -> Rational {
    let (dx, dy) = ((a.0 - b.0) as i128, (a.1 - b.1) as i128);
    let scaled = (dx * dx + dy * dy) << (2 * (WEIGHT_BITS - COORD_BITS));
    let mut r = scaled.sqrt();
    if scaled - r * r > r {
        r += 1;
    }
    Rational::new(r, 1i128 << WEIGHT_BITS)
}

/// `rows × cols` grid; vertex `(i, j)` is `i · cols + j`.
pub fn gen_grid(rows: usize, cols: usize, weights: &WeightDist, seed: u64) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::Argument(format!("grid needs positive dimensions, got {rows}x{cols}")));
    }
    weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1, weights.sample(&mut rng)));
            }
            if i + 1 < rows {
                edges.push((v, v + cols, weights.sample(&mut rng)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// `C_p × C_q`, which has genus exactly 1 for `p, q >= 3`.
pub fn gen_toroidal_grid(p: usize, q: usize, weights: &WeightDist, seed: u64) -> Result<Graph> {
    if p < 3 || q < 3 {
        return Err(Error::Argument(format!("toroidal grid needs p, q >= 3, got {p}x{q}")));
    }
    weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(2 * p * q);
    for i in 0..p {
        for j in 0..q {
            let v = i * q + j;
            edges.push((v, i * q + (j + 1) % q, weights.sample(&mut rng)));
            edges.push((v, ((i + 1) % p) * q + j, weights.sample(&mut rng)));
        }
    }
    Graph::from_edges(p * q, edges)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn gen_random_tree(n: usize, weights: &WeightDist, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Argument("tree needs n >= 1".into()));
    }
    weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n)
        .map(|i| {
            let parent = rng.gen_range(0..i);
            (parent, i, weights.sample(&mut rng))
        })
        .collect();
    Graph::from_edges(n, edges)
}

/// `G(n, p)`, resampled until connected.
pub fn gen_erdos_renyi(n: usize, p: f64, weights: &WeightDist, seed: u64) -> Result<Graph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!("erdos_renyi needs n >= 1 and p in [0, 1], got n={n}, p={p}")));
    }
    weights.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CONNECT_RETRIES {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v, weights.sample(&mut rng)));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Generation(format!(
        "G({n}, {p}) stayed disconnected after {CONNECT_RETRIES} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::minimum_spanning_tree;

    #[test]
    fn comb_shape() {
        let c = gen_comb_lower_bound(25, Rational::integer(3)).unwrap();
        assert_eq!(c.graph.vertex_count(), 100);
        assert_eq!(c.graph.edge_count(), 99);
        assert!(c.graph.is_connected());
        assert_eq!(c.heavy_weight, Rational::new(13, 2));
        assert!(c.warnings.is_empty());
        assert_eq!(c.script.len(), 49);
        assert!(c.script.iter().all(|&e| c.graph.weight(e) == Rational::one()));
        // spine edges walk 0 -> 1 -> ... in script order
        for (i, &e) in c.script.iter().enumerate() {
            let edge = c.graph.edge(e);
            assert_eq!((edge.u, edge.v), (i, i + 1));
        }
    }

    #[test]
    fn comb_degenerate_warns() {
        let c = gen_comb_lower_bound(1, Rational::one()).unwrap();
        assert_eq!(c.graph.vertex_count(), 4);
        assert_eq!(c.heavy_weight, Rational::one());
        assert_eq!(c.warnings.len(), 2);
        assert!(gen_comb_lower_bound(0, Rational::one()).is_err());
        assert!(gen_comb_lower_bound(3, Rational::zero()).is_err());
    }

    #[test]
    fn three_points_make_a_triangle() {
        let g = gen_random_planar(3, 11).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(gen_random_planar(2, 0).is_err());
    }

    #[test]
    fn planar_euler_bound_and_determinism() {
        for seed in 0..5 {
            let g = gen_random_planar(300, seed).unwrap();
            assert!(g.edge_count() <= 3 * 300 - 6);
            assert!(g.is_connected());
            let h = gen_random_planar(300, seed).unwrap();
            assert_eq!(g, h);
            assert!(g.edges().iter().all(|e| e.weight.is_positive() && e.weight.denom() <= 1 << 30));
        }
    }

    #[test]
    fn euclidean_is_rounded_length() {
        let unit = 1i64 << COORD_BITS;
        assert_eq!(euclidean((0, 0), (unit, 0)), Rational::one());
        assert_eq!(euclidean((0, 0), (3 << 20, 4 << 20)), Rational::new(5, 16));
        let diag = euclidean((0, 0), (unit, unit)).to_f64();
        assert!((diag - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn torus_counts() {
        let g = gen_toroidal_grid(3, 3, &WeightDist::Unit, 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 18));
        assert!((0..9).all(|v| g.degree(v) == 4));
        let g = gen_toroidal_grid(4, 4, &WeightDist::Unit, 0).unwrap();
        assert_eq!(minimum_spanning_tree(&g).unwrap().weight(&g).unwrap(), Rational::integer(15));
        let g = gen_toroidal_grid(5, 4, &WeightDist::one_to_two(), 3).unwrap();
        assert!(g.edges().iter().all(|e| e.weight >= Rational::one() && e.weight <= Rational::integer(2)));
    }

    #[test]
    fn grid_tree_and_gnp() {
        let g = gen_grid(2, 2, &WeightDist::Unit, 0).unwrap();
        assert_eq!(minimum_spanning_tree(&g).unwrap().weight(&g).unwrap(), Rational::integer(3));
        let t = gen_random_tree(10, &WeightDist::one_to_two(), 4).unwrap();
        assert_eq!(t.edge_count(), 9);
        assert!(t.is_connected());
        let e = gen_erdos_renyi(30, 0.2, &WeightDist::one_to_two(), 5).unwrap();
        assert!(e.is_connected());
        assert!(matches!(gen_erdos_renyi(30, 0.0, &WeightDist::Unit, 5), Err(Error::Generation(_))));
    }
}
