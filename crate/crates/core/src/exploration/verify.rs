use std::collections::BTreeMap;

use serde::Serialize;

use super::{StepRole, TraversalLog};
use crate::error::Result;
use crate::graph::{minimum_spanning_tree, mst_maximizing_overlap, EdgeId, EdgeSubset, Graph};
use crate::minimality::{check_minimality, MinimalityReport};
use crate::oracle::{enumerate_cycles_check, CycleReport, CYCLE_MAX_CYCLOMATIC};
use crate::rational::Rational;

#[derive(Clone, Debug, Default, Serialize)]
pub struct EdgeCharge {
    pub edge: EdgeId,
    pub weight: Rational,
    pub approach: Rational,
    pub take: Rational,
    #[serde(rename = "return")]
    pub back: Rational,
}

impl EdgeCharge {
    pub fn total(&self) -> Rational {
        self.approach + self.take + self.back
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChargeReport {
    pub per_edge: Vec<EdgeCharge>,
    /// Largest `charged / w(e)` over edges with positive weight.
    pub max_charge_ratio: Option<Rational>,
    pub violations: Vec<String>,
}

impl ChargeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-edge charge decomposition: every step is charged to a taken boundary
/// edge `e`, with approach `<= (1+δ) w(e)`, take `= w(e)`, return
/// `<= (2+δ) w(e)` and in total `<= 2(δ+2) w(e)`.
pub fn verify_charges(g: &Graph, log: &TraversalLog, delta: Rational) -> Result<ChargeReport> {
    log.taken_boundary.check_parent(g)?;
    let mut charges: BTreeMap<EdgeId, EdgeCharge> = log
        .taken_boundary
        .ids()
        .map(|e| (e, EdgeCharge { edge: e, weight: g.weight(e), ..Default::default() }))
        .collect();
    let mut violations = Vec::new();
    for (i, step) in log.steps.iter().enumerate() {
        let Some(c) = charges.get_mut(&step.charged_to) else {
            violations.push(format!("step {i} charged to edge {} which is not in B", step.charged_to));
            continue;
        };
        match step.role {
            StepRole::Approach => c.approach += step.weight,
            StepRole::TakeBoundary => c.take += step.weight,
            StepRole::Return => c.back += step.weight,
        }
    }
    let one = Rational::one();
    let two = Rational::integer(2);
    let mut max_ratio: Option<Rational> = None;
    for c in charges.values() {
        let w = c.weight;
        if c.approach > (one + delta) * w {
            violations.push(format!("edge {}: approach {} > (1+δ)·{}", c.edge, c.approach, w));
        }
        if c.take != w {
            violations.push(format!("edge {}: taken at cost {} instead of {}", c.edge, c.take, w));
        }
        if c.back > (two + delta) * w {
            violations.push(format!("edge {}: return {} > (2+δ)·{}", c.edge, c.back, w));
        }
        if c.total() > two * (delta + two) * w {
            violations.push(format!("edge {}: charge {} > 2(δ+2)·{}", c.edge, c.total(), w));
        }
        if w.is_positive() {
            let r = c.total() / w;
            max_ratio = Some(max_ratio.map_or(r, |m| m.max(r)));
        }
    }
    let total: Rational = log.steps.iter().map(|s| s.weight).sum();
    if total != log.total_cost {
        violations.push(format!("step weights sum to {total}, log says {}", log.total_cost));
    }
    Ok(ChargeReport { per_edge: charges.into_values().collect(), max_charge_ratio: max_ratio, violations })
}

#[derive(Clone, Debug, Serialize)]
pub struct CostChainReport {
    pub total_cost: Rational,
    pub boundary_weight: Rational,
    pub mst_weight: Rational,
    pub mst_b_weight: Rational,
    /// `2(δ+2) w(B)`.
    pub observation_bound: Rational,
    pub observation_holds: bool,
    pub charges_hold: bool,
    /// `2(δ+2) · lightness_bound · w(MST_B)` when a bound was supplied.
    pub chain_bound: Option<Rational>,
    pub chain_holds: Option<bool>,
}

impl CostChainReport {
    pub fn passed(&self) -> bool {
        self.observation_holds && self.charges_hold && self.chain_holds.unwrap_or(true)
    }
}

/// The checkable links of the cost chain `W <= 2(δ+2) w(B) <= 2(δ+2) ·
/// OptSpan · w(MST_B)`. `lightness_bound` is a known upper bound on the
/// minimum lightness of `(1+δ)`-spanners for the instance's graph class.
pub fn verify_cost_chain(
    g: &Graph,
    log: &TraversalLog,
    delta: Rational,
    lightness_bound: Option<Rational>,
) -> Result<CostChainReport> {
    let boundary_weight = log.taken_boundary.weight(g)?;
    let factor = Rational::integer(2) * (delta + Rational::integer(2));
    let observation_bound = factor * boundary_weight;
    let mst_b = mst_maximizing_overlap(g, &log.taken_boundary)?;
    let mst_b_weight = mst_b.weight(g)?;
    let mst_weight = minimum_spanning_tree(g)?.weight(g)?;
    let charges = verify_charges(g, log, delta)?;
    let chain_bound = lightness_bound.map(|b| factor * b * mst_b_weight);
    Ok(CostChainReport {
        total_cost: log.total_cost,
        boundary_weight,
        mst_weight,
        mst_b_weight,
        observation_bound,
        observation_holds: log.total_cost <= observation_bound,
        charges_hold: charges.passed(),
        chain_holds: chain_bound.map(|b| log.total_cost <= b),
        chain_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleProperty {
    pub union: EdgeSubset,
    pub mst_b: EdgeSubset,
    pub minimality: MinimalityReport,
    /// Exhaustive cycle enumeration on the union, when small enough.
    pub cycles: Option<CycleReport>,
}

impl CycleProperty {
    pub fn passed(&self) -> bool {
        self.minimality.passed() && self.cycles.as_ref().is_none_or(CycleReport::passed)
    }

    /// Whether the per-edge check and the cycle enumeration reach the same
    /// verdict (vacuously true when enumeration was skipped).
    pub fn oracles_agree(&self) -> bool {
        self.cycles.as_ref().is_none_or(|c| c.passed() == self.minimality.passed())
    }
}

/// `S = B ∪ MST_B` has no short cycles: for each `e = (u, v)` in `S`,
/// `d_{S \ e}(u, v) > (1+δ) w(e)`. When the cyclomatic number of `S` is
/// small, every simple cycle is also checked directly.
pub fn verify_blocking_cycle_property(g: &Graph, log: &TraversalLog, delta: Rational) -> Result<CycleProperty> {
    let mst_b = mst_maximizing_overlap(g, &log.taken_boundary)?;
    let union = log.taken_boundary.union(&mst_b)?;
    let stretch = Rational::one() + delta;
    let minimality = check_minimality(g, &union, stretch)?;
    let (sub, _) = g.subgraph(&union)?;
    let cycles = if sub.cyclomatic_number() <= CYCLE_MAX_CYCLOMATIC {
        Some(enumerate_cycles_check(&sub, stretch)?)
    } else {
        None
    };
    Ok(CycleProperty { union, mst_b, minimality, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exploration::{run_blocking, ExplorationParams};
    use crate::graph::fixtures::{graph, int};

    #[test]
    fn single_edge_chain() {
        let g = graph(2, &[(0, 1, 5)]);
        let log = run_blocking(&g, ExplorationParams::new(int(1), 0)).unwrap();
        let r = verify_cost_chain(&g, &log, int(1), None).unwrap();
        assert_eq!(r.total_cost, int(10));
        assert_eq!(r.observation_bound, int(30));
        assert!(r.passed());
    }

    #[test]
    fn tree_passes_vacuously() {
        let g = graph(5, &[(0, 1, 1), (1, 2, 3), (1, 3, 2), (3, 4, 1)]);
        let log = run_blocking(&g, ExplorationParams::new(int(2), 2)).unwrap();
        let r = verify_blocking_cycle_property(&g, &log, int(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.cycles.unwrap().cycles, 0);
    }

    #[test]
    fn light_triangle_every_start() {
        // weights (1, 1, 10), δ = 1: the heavy edge would close a cycle of
        // rest weight 2 <= 20, so it must stay out of B ∪ MST_B.
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 10)]);
        for start in 0..3 {
            let log = run_blocking(&g, ExplorationParams::new(int(1), start)).unwrap();
            let r = verify_blocking_cycle_property(&g, &log, int(1)).unwrap();
            assert!(r.passed(), "start {start}");
            assert!(!r.union.contains(2));
            assert!(r.oracles_agree());
        }
    }

    #[test]
    fn tampered_log_is_caught() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        let mut log = run_blocking(&g, ExplorationParams::new(int(1), 0)).unwrap();
        log.steps[0].weight = int(50);
        let r = verify_charges(&g, &log, int(1)).unwrap();
        assert!(!r.passed());
    }
}
