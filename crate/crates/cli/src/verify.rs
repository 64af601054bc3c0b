use serde::Serialize;
use spanex_core::instances::WeightDist;
use spanex_core::oracle::{brute_force_tsp, exact_tsp, PERMUTATION_MAX_VERTICES};
use spanex_core::{Family, Instance, InstanceSpec, Rational};

use crate::config::{Algorithm, DeltaExpr};
use crate::explore::ExploreRow;
use crate::report::{Verdict, Verdicts};
use crate::spanner::SpannerRow;

/// Aggregate of one check over a campaign.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub check: String,
    pub runs: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub first_failure: String,
}

impl SummaryRow {
    fn new(check: &str) -> SummaryRow {
        SummaryRow { check: check.into(), runs: 0, passed: 0, failed: 0, skipped: 0, first_failure: String::new() }
    }

    fn add(&mut self, verdict: Verdict, describe: impl FnOnce() -> String) {
        self.runs += 1;
        match verdict {
            Verdict::Pass => self.passed += 1,
            Verdict::Skipped => self.skipped += 1,
            Verdict::Fail => {
                self.failed += 1;
                if self.first_failure.is_empty() {
                    self.first_failure = describe();
                }
            }
        }
    }
}

/// Seeded instance matrix used when `verify` is given no instances.
pub fn default_matrix(base_seed: u64) -> Vec<InstanceSpec> {
    let w = WeightDist::one_to_two;
    let mut out = Vec::new();
    for i in 0..12u64 {
        let seed = base_seed.wrapping_add(i);
        let j = i as usize;
        out.push(InstanceSpec::new(Family::RandomPlanar { points: 5 + 5 * j }, seed));
        out.push(InstanceSpec::new(Family::Grid { rows: 2 + j % 5, cols: 2 + j % 4, weights: w() }, seed));
        out.push(InstanceSpec::new(Family::ToroidalGrid { p: 3 + j % 4, q: 3 + j % 5, weights: w() }, seed));
        out.push(InstanceSpec::new(Family::RandomTree { n: 4 + 3 * j, weights: w() }, seed));
        out.push(InstanceSpec::new(Family::ErdosRenyi { n: 5 + j % 6, p: 0.4, weights: w() }, seed));
    }
    for k in 4..=10 {
        out.push(InstanceSpec::new(Family::CombLowerBound { k, delta: Rational::integer(2) }, 0));
    }
    out
}

pub fn default_algorithms() -> Vec<Algorithm> {
    let mut out: Vec<Algorithm> = [Rational::new(1, 2), Rational::integer(2), Rational::integer(5)]
        .into_iter()
        .map(|d| Algorithm::Blocking { delta: DeltaExpr::Constant(d), tie_break: None })
        .collect();
    out.push(Algorithm::NearestNeighbor);
    out
}

pub fn default_epsilons() -> Vec<Rational> {
    vec![Rational::new(1, 2), Rational::one(), Rational::integer(2)]
}

/// Held–Karp against permutation enumeration, for instances small enough.
pub fn tsp_agreement(inst: &Instance) -> anyhow::Result<Verdict> {
    if inst.graph.vertex_count() > PERMUTATION_MAX_VERTICES {
        return Ok(Verdict::Skipped);
    }
    Ok(Verdict::of(exact_tsp(&inst.graph)?.cost == brute_force_tsp(&inst.graph)?))
}

pub fn summarize(explore: &[ExploreRow], spanner: &[SpannerRow], tsp: &[(String, Verdict)]) -> Vec<SummaryRow> {
    // rows in order of first appearance
    let mut by_name: Vec<SummaryRow> = Vec::new();
    let index = |name: &str, by_name: &mut Vec<SummaryRow>| -> usize {
        match by_name.iter().position(|r| r.check == name) {
            Some(i) => i,
            None => {
                by_name.push(SummaryRow::new(name));
                by_name.len() - 1
            }
        }
    };
    for row in explore {
        for (check, verdict) in row.verdicts() {
            let i = index(check.name(), &mut by_name);
            by_name[i].add(verdict, || describe_explore(row));
        }
    }
    for row in spanner {
        for (check, verdict) in row.verdicts() {
            let i = index(check.name(), &mut by_name);
            by_name[i].add(verdict, || describe_spanner(row));
        }
    }
    for (id, verdict) in tsp {
        let i = index("tsp_permutation", &mut by_name);
        by_name[i].add(*verdict, || id.clone());
    }
    by_name
}

fn describe_explore(row: &ExploreRow) -> String {
    match &row.delta {
        Some(d) => format!("{} {} delta {d}", row.instance, row.algorithm),
        None => format!("{} {}", row.instance, row.algorithm),
    }
}

fn describe_spanner(row: &SpannerRow) -> String {
    let mut s = format!("{} epsilon {}", row.instance, row.epsilon);
    if !row.stretch_violations.is_empty() {
        s.push_str(&format!(", stretched edges [{}]", row.stretch_violations));
    }
    s
}
