use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    InvalidVertex { vertex: VertexId, vertex_count: usize },

    #[error("edge {edge} out of range (graph has {edge_count} edges)")]
    InvalidEdge { edge: EdgeId, edge_count: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("graph is disconnected: vertices {} are separated from vertex 0", format_component(.component))]
    Disconnected { component: Vec<VertexId> },

    #[error("edge subset belongs to a different graph")]
    ForeignSubset,

    #[error("exploration state error: {0}")]
    State(String),

    #[error("{invariant} violated: {witness}")]
    InvariantViolation { invariant: &'static str, witness: String },

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance generation failed: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_component(component: &[VertexId]) -> String {
    const SHOWN: usize = 8;
    let head: Vec<String> = component.iter().take(SHOWN).map(|v| v.to_string()).collect();
    if component.len() > SHOWN {
        format!("{{{}, ... ({} total)}}", head.join(", "), component.len())
    } else {
        format!("{{{}}}", head.join(", "))
    }
}
