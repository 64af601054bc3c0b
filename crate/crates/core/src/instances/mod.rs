//! Seeded instance generators and the edge-list file format.

mod generators;
mod io;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exploration::TieBreak;
use crate::graph::{Graph, VertexId};
use crate::rational::Rational;

pub use generators::{
    gen_comb_lower_bound, gen_erdos_renyi, gen_grid, gen_random_planar, gen_random_tree, gen_toroidal_grid, Comb,
    WeightDist,
};
pub use io::{format_graph, parse_graph, read_graph, write_graph};

fn unit() -> WeightDist {
    WeightDist::Unit
}

fn one_to_two() -> WeightDist {
    WeightDist::one_to_two()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum Family {
    CombLowerBound {
        k: usize,
        delta: Rational,
    },
    RandomPlanar {
        points: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
        #[serde(default = "unit")]
        weights: WeightDist,
    },
    ToroidalGrid {
        p: usize,
        q: usize,
        #[serde(default = "one_to_two")]
        weights: WeightDist,
    },
    RandomTree {
        n: usize,
        #[serde(default = "one_to_two")]
        weights: WeightDist,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
        #[serde(default = "one_to_two")]
        weights: WeightDist,
    },
    File {
        path: PathBuf,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::CombLowerBound { .. } => "comb_lower_bound",
            Family::RandomPlanar { .. } => "random_planar",
            Family::Grid { .. } => "grid",
            Family::ToroidalGrid { .. } => "toroidal_grid",
            Family::RandomTree { .. } => "random_tree",
            Family::ErdosRenyi { .. } => "erdos_renyi",
            Family::File { .. } => "file",
        }
    }

    /// Genus known from the construction; `None` when it is not.
    pub fn genus(&self) -> Option<u32> {
        match self {
            Family::CombLowerBound { .. } | Family::RandomPlanar { .. } | Family::Grid { .. } => Some(0),
            Family::RandomTree { .. } => Some(0),
            Family::ToroidalGrid { .. } => Some(1),
            Family::ErdosRenyi { .. } | Family::File { .. } => None,
        }
    }
}

/// Family, parameters and seed; the same spec always yields the same graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, seed: u64) -> InstanceSpec {
        InstanceSpec { family, seed }
    }

    /// Short stable identifier used in reports.
    pub fn id(&self) -> String {
        let params = match &self.family {
            Family::CombLowerBound { k, delta } => format!("k={k},delta={delta}"),
            Family::RandomPlanar { points } => format!("points={points}"),
            Family::Grid { rows, cols, .. } => format!("{rows}x{cols}"),
            Family::ToroidalGrid { p, q, .. } => format!("{p}x{q}"),
            Family::RandomTree { n, .. } => format!("n={n}"),
            Family::ErdosRenyi { n, p, .. } => format!("n={n},p={p}"),
            Family::File { path } => return format!("file:{}", path.display()),
        };
        format!("{}({params})#{}", self.family.name(), self.seed)
    }

    pub fn build(&self) -> Result<Instance> {
        let seed = self.seed;
        let mut start = 0;
        let mut tie_break = TieBreak::ByEdgeId;
        let mut warnings = Vec::new();
        let graph = match &self.family {
            Family::CombLowerBound { k, delta } => {
                let comb = gen_comb_lower_bound(*k, *delta)?;
                start = comb.start;
                tie_break = TieBreak::Adversarial(comb.script);
                warnings = comb.warnings;
                comb.graph
            }
            Family::RandomPlanar { points } => gen_random_planar(*points, seed)?,
            Family::Grid { rows, cols, weights } => gen_grid(*rows, *cols, weights, seed)?,
            Family::ToroidalGrid { p, q, weights } => gen_toroidal_grid(*p, *q, weights, seed)?,
            Family::RandomTree { n, weights } => gen_random_tree(*n, weights, seed)?,
            Family::ErdosRenyi { n, p, weights } => gen_erdos_renyi(*n, *p, weights, seed)?,
            Family::File { path } => read_graph(path)?,
        };
        for w in &warnings {
            log::warn!("{}: {w}", self.id());
        }
        Ok(Instance { id: self.id(), genus: self.family.genus(), spec: self.clone(), graph, start, tie_break, warnings })
    }
}

/// A generated graph together with what the generator knows about it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub spec: InstanceSpec,
    pub graph: Graph,
    pub start: VertexId,
    /// The tie-break the generator recommends (the adversarial script for
    /// the comb, edge ids otherwise).
    pub tie_break: TieBreak,
    pub genus: Option<u32>,
    pub warnings: Vec<String>,
}
