use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Parses the edge-list format: a header `n m`, then `m` lines `u v p q`
/// for an edge of weight `p/q`. Text after `#` is ignored, as are blank
/// lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match header {
            None => {
                let [n, m] = fields[..] else {
                    return Err(parse_error(line, format!("expected header `n m`, got `{content}`")));
                };
                header = Some((number(n, line, "n")?, number(m, line, "m")?));
            }
            Some((_, m)) => {
                if edges.len() == m {
                    return Err(parse_error(line, format!("more than the {m} declared edges")));
                }
                let [u, v, p, q] = fields[..] else {
                    return Err(parse_error(line, format!("expected `u v p q`, got `{content}`")));
                };
                let u = number(u, line, "u")?;
                let v = number(v, line, "v")?;
                let p: i128 = p.parse().map_err(|_| parse_error(line, format!("bad numerator `{p}`")))?;
                let q: i128 = q.parse().map_err(|_| parse_error(line, format!("bad denominator `{q}`")))?;
                if q <= 0 {
                    return Err(parse_error(line, format!("denominator must be positive, got {q}")));
                }
                if p < 0 {
                    return Err(parse_error(line, format!("weight must be non-negative, got {p}/{q}")));
                }
                edges.push((u, v, Rational::new(p, q), line));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(parse_error(0, "missing header".into()));
    };
    if edges.len() != m {
        return Err(parse_error(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    for &(u, v, _, line) in &edges {
        if u >= n || v >= n {
            return Err(parse_error(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_error(line, format!("self-loop at {u}")));
        }
    }
    Graph::from_edges(n, edges.into_iter().map(|(u, v, w, _)| (u, v, w)))
}

fn number(s: &str, line: usize, what: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_error(line, format!("bad {what} `{s}`")))
}

fn parse_error(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

/// Canonical text form: reduced weights, edges in id order, no comments.
pub fn format_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {} {}", e.u, e.v, e.weight.numer(), e.weight.denom()).unwrap();
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_graph(g))?;
    Ok(())
}
