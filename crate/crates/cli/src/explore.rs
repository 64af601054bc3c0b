use serde::Serialize;
use spanex_core::bounds::blocking_competitive_bound;
use spanex_core::exploration::{verify_blocking_cycle_property, verify_cost_chain, RunRecord};
use spanex_core::graph::minimum_spanning_tree;
use spanex_core::oracle::{exact_tsp, TSP_MAX_VERTICES};
use spanex_core::{run_blocking, run_nearest_neighbor, ExplorationParams, Instance, Rational, TraversalLog};

use crate::config::{Algorithm, Check, Checks};
use crate::report::{float, Verdict, Verdicts};

/// One exploration run. Rational columns are exact; `_f` columns are
/// advisory floats.
#[derive(Clone, Debug, Serialize)]
pub struct ExploreRow {
    pub instance: String,
    pub family: &'static str,
    pub n: usize,
    pub m: usize,
    pub genus: Option<u32>,
    pub algorithm: &'static str,
    pub delta_expr: Option<String>,
    pub delta: Option<Rational>,
    pub delta_f: Option<f64>,
    pub total_cost: Rational,
    pub total_cost_f: f64,
    pub mst_weight: Rational,
    /// `total_cost / w(MST)`.
    pub ratio: Option<Rational>,
    pub ratio_f: Option<f64>,
    /// `total_cost / (2 w(G))`.
    pub cost_per_2w: Option<Rational>,
    pub cost_per_2w_f: Option<f64>,
    pub ratio_per_log2n_f: Option<f64>,
    pub exact_tsp: Option<Rational>,
    /// `total_cost / Opt`.
    pub tsp_ratio: Option<Rational>,
    pub tsp_ratio_f: Option<f64>,
    pub competitive_bound: Option<Rational>,
    pub competitive_bound_f: Option<f64>,
    pub observation: Verdict,
    pub cycle_property: Verdict,
    pub competitive: Verdict,
    pub audit: Verdict,
    pub tsp: Verdict,
    pub pass: bool,
    pub warnings: String,
}

impl Verdicts for ExploreRow {
    fn verdicts(&self) -> Vec<(Check, Verdict)> {
        vec![
            (Check::Observation, self.observation),
            (Check::CycleProperty, self.cycle_property),
            (Check::Competitive, self.competitive),
            (Check::Audit, self.audit),
            (Check::Tsp, self.tsp),
        ]
    }
}

pub struct ExploreRun {
    pub row: ExploreRow,
    pub log: TraversalLog,
    pub verification: serde_json::Value,
}

impl ExploreRun {
    pub fn record(&self) -> RunRecord<'_> {
        RunRecord { log: &self.log, verification: self.verification.clone() }
    }
}

pub fn explore(inst: &Instance, algorithm: &Algorithm, checks: &Checks) -> anyhow::Result<ExploreRun> {
    let g = &inst.graph;
    let n = g.vertex_count();
    let mst_weight = minimum_spanning_tree(g)?.weight(g)?;
    let (log, delta, delta_expr) = match algorithm {
        Algorithm::Blocking { delta, tie_break } => {
            let d = delta.evaluate(n);
            let mut params = ExplorationParams::new(d, inst.start)
                .with_tie_break(tie_break.clone().unwrap_or_else(|| inst.tie_break.clone()));
            if checks.invariants {
                params = params.verified();
            }
            (run_blocking(g, params)?, Some(d), Some(delta.to_string()))
        }
        Algorithm::NearestNeighbor => (run_nearest_neighbor(g, inst.start)?, None, None),
    };
    let cost = log.total_cost;
    let ratio = (!mst_weight.is_zero()).then(|| cost / mst_weight);
    let graph_weight = g.total_weight();
    let cost_per_2w = (!graph_weight.is_zero()).then(|| cost / (Rational::integer(2) * graph_weight));
    let ratio_per_log2n_f = ratio.filter(|_| n >= 2).map(|r| float(r) / (n as f64).log2());

    let mut verification = serde_json::Map::new();
    let (mut observation, mut cycle_property, mut competitive) = (Verdict::Skipped, Verdict::Skipped, Verdict::Skipped);
    let mut competitive_bound = None;
    if let Some(d) = delta {
        let chain = verify_cost_chain(g, &log, d, None)?;
        observation = Verdict::of(chain.observation_holds && chain.charges_hold);
        let cycles = verify_blocking_cycle_property(g, &log, d)?;
        cycle_property = Verdict::of(cycles.passed() && cycles.oracles_agree());
        if let (Some(genus), Some(r)) = (inst.genus, ratio) {
            let bound = blocking_competitive_bound(genus, d);
            competitive = Verdict::of(r <= bound);
            competitive_bound = Some(bound);
        }
        verification.insert("cost_chain".into(), serde_json::to_value(&chain)?);
        verification.insert(
            "cycle_property".into(),
            serde_json::json!({
                "passed": cycles.passed(),
                "oracles_agree": cycles.oracles_agree(),
                "union_edges": cycles.union.len(),
                "violations": cycles.minimality.violations,
            }),
        );
    }

    let (mut tsp, mut tsp_cost) = (Verdict::Skipped, None);
    if n <= TSP_MAX_VERTICES {
        let opt = exact_tsp(g)?.cost;
        let two = Rational::integer(2);
        tsp = Verdict::of(mst_weight <= opt && opt <= two * mst_weight && opt <= cost);
        tsp_cost = Some(opt);
    }
    let tsp_ratio = tsp_cost.filter(|o| !o.is_zero()).map(|o| cost / o);
    let audit = Verdict::of(log.audit.violations == 0);

    let mut row = ExploreRow {
        instance: inst.id.clone(),
        family: inst.spec.family.name(),
        n,
        m: g.edge_count(),
        genus: inst.genus,
        algorithm: algorithm.name(),
        delta_expr,
        delta,
        delta_f: delta.map(float),
        total_cost: cost,
        total_cost_f: float(cost),
        mst_weight,
        ratio,
        ratio_f: ratio.map(float),
        cost_per_2w,
        cost_per_2w_f: cost_per_2w.map(float),
        ratio_per_log2n_f,
        exact_tsp: tsp_cost,
        tsp_ratio,
        tsp_ratio_f: tsp_ratio.map(float),
        competitive_bound,
        competitive_bound_f: competitive_bound.map(float),
        observation,
        cycle_property,
        competitive,
        audit,
        tsp,
        pass: true,
        warnings: inst.warnings.join("; "),
    };
    row.pass = row.passes(checks);
    verification.insert("verdicts".into(), serde_json::to_value(row.verdicts())?);
    Ok(ExploreRun { row, log, verification: serde_json::Value::Object(verification) })
}
