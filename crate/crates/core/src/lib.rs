//! Online exploration of weighted graphs with `Blocking_δ`, greedy
//! `(1+ε)`-spanners, seeded instance families and brute-force oracles, all
//! over exact rational weights.

pub mod bounds;
pub mod error;
pub mod exploration;
pub mod graph;
pub mod instances;
pub mod minimality;
pub mod oracle;
pub mod rational;
pub mod spanner;

pub use error::{Error, Result};
pub use exploration::{run_blocking, run_nearest_neighbor, ExplorationParams, TieBreak, TraversalLog};
pub use graph::{Edge, EdgeId, EdgeSubset, Graph, VertexId};
pub use instances::{Family, Instance, InstanceSpec};
pub use rational::{Distance, Rational};
pub use spanner::{greedy_spanner, SpannerResult};
