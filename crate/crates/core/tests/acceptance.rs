//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use spanex_core::bounds::{blocking_competitive_bound, comb_ratio_lower_bound, spanner_lightness_bound};
use spanex_core::exploration::{verify_blocking_cycle_property, verify_cost_chain};
use spanex_core::graph::minimum_spanning_tree;
use spanex_core::instances::WeightDist;
use spanex_core::oracle::{brute_force_optspan, brute_force_tsp, exact_tsp, mst_bounds, OPTSPAN_MAX_EDGES};
use spanex_core::spanner::{
    verify_mst_containment, verify_spanner_minimality, verify_spanner_stretch, StretchMode,
};
use spanex_core::{
    greedy_spanner, run_blocking, ExplorationParams, Family, Graph, Instance, InstanceSpec, Rational, SpannerResult,
    TieBreak,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn build(family: Family, seed: u64) -> Instance {
    InstanceSpec::new(family, seed).build().expect("instance builds")
}

fn mst_weight(g: &Graph) -> Rational {
    minimum_spanning_tree(g).unwrap().weight(g).unwrap()
}

fn fmt(x: Rational) -> String {
    format!("{:.4}", x.to_f64())
}

// ---------------------------------------------------------------------------
// 1. comb lower bound

fn comb_lower_bound() -> Outcome {
    let t0 = Instant::now();
    let delta = Rational::integer(3);
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [25usize, 50, 100, 200] {
        let inst = build(Family::CombLowerBound { k, delta }, 0);
        let params = ExplorationParams::new(delta, inst.start).with_tie_break(inst.tie_break.clone());
        let log = run_blocking(&inst.graph, params).expect("comb run");
        let two_w = Rational::integer(2) * inst.graph.total_weight();
        let ratio = log.total_cost / two_w;
        let bound = comb_ratio_lower_bound(k, delta);
        ok &= ratio >= bound;
        if k == 25 {
            ok &= log.total_cost >= Rational::integer(625);
            notes.push(format!("k=25 cost {}", log.total_cost.to_f64()));
        }
        notes.push(format!("k={k} ratio {} >= {}", fmt(ratio), fmt(bound)));
    }
    let limit = (delta + Rational::one()) / Rational::integer(2);
    let slack = (limit - comb_ratio_lower_bound(200, delta)) / limit;
    ok &= slack <= r(1, 10);
    notes.push(format!("formula slack at k=200 {:.2}%", 100.0 * slack.to_f64()));
    let elapsed = t0.elapsed();
    ok &= elapsed < Duration::from_secs(10);
    notes.push(format!("{:.2}s", elapsed.as_secs_f64()));
    outcome(ok, notes.join(", "))
}

// ---------------------------------------------------------------------------
// 2, 3, 11. seeded campaign over all families

struct CampaignRun {
    instance: String,
    delta: Rational,
    cost_ok: bool,
    charges_ok: bool,
    minimal_ok: bool,
    enumerated: bool,
    oracles_agree: bool,
    audit_reads: u64,
    audit_violations: u64,
}

struct Campaign {
    runs: Vec<CampaignRun>,
    elapsed: Duration,
}

fn campaign_specs() -> Vec<(InstanceSpec, TieBreak)> {
    let u = WeightDist::one_to_two;
    let mut out = Vec::new();
    let mut push = |family: Family, seed: u64, tb: TieBreak| out.push((InstanceSpec::new(family, seed), tb));
    for seed in 0..60u64 {
        let tb = if seed % 2 == 0 { TieBreak::ByEdgeId } else { TieBreak::Random(seed) };
        push(Family::RandomPlanar { points: 10 + (seed as usize * 7) % 140 }, seed, tb.clone());
        push(Family::Grid { rows: 2 + seed as usize % 9, cols: 2 + (seed as usize * 5) % 11, weights: u() }, seed, tb.clone());
        push(Family::ToroidalGrid { p: 3 + seed as usize % 8, q: 3 + (seed as usize * 3) % 9, weights: u() }, seed, tb.clone());
        push(Family::RandomTree { n: 5 + (seed as usize * 11) % 120, weights: u() }, seed, tb.clone());
        push(Family::ErdosRenyi { n: 6 + seed as usize % 20, p: 0.35, weights: u() }, seed, tb.clone());
    }
    for seed in 0..30u64 {
        // small graphs whose B ∪ MST_B stays under the cycle-enumeration guard
        push(Family::ErdosRenyi { n: 5 + seed as usize % 5, p: 0.6, weights: u() }, 1000 + seed, TieBreak::Random(seed));
        push(Family::RandomPlanar { points: 4 + seed as usize % 6 }, 1000 + seed, TieBreak::ByEdgeId);
    }
    for k in 1..=25usize {
        let spec = InstanceSpec::new(Family::CombLowerBound { k, delta: Rational::integer(1 + k as i128 % 4) }, 0);
        let tb = spec.build().unwrap().tie_break;
        out.push((spec, tb));
    }
    out
}

fn campaign() -> &'static Campaign {
    static CAMPAIGN: OnceLock<Campaign> = OnceLock::new();
    CAMPAIGN.get_or_init(|| {
        let t0 = Instant::now();
        let deltas = [r(1, 2), r(2, 1), r(5, 1)];
        let specs = campaign_specs();
        let jobs: Vec<_> = specs.iter().flat_map(|s| deltas.iter().map(move |d| (s, *d))).collect();
        let runs = jobs
            .par_iter()
            .map(|((spec, tb), delta)| {
                let inst = spec.build().expect("campaign instance");
                let g = &inst.graph;
                let params = ExplorationParams::new(*delta, inst.start).with_tie_break(tb.clone());
                let log = run_blocking(g, params).expect("campaign run");
                let chain = verify_cost_chain(g, &log, *delta, None).unwrap();
                let cycles = verify_blocking_cycle_property(g, &log, *delta).unwrap();
                CampaignRun {
                    instance: inst.id.clone(),
                    delta: *delta,
                    cost_ok: chain.observation_holds,
                    charges_ok: chain.charges_hold,
                    minimal_ok: cycles.minimality.passed(),
                    enumerated: cycles.cycles.is_some(),
                    oracles_agree: cycles.oracles_agree() && cycles.passed() == cycles.minimality.passed(),
                    audit_reads: log.audit.reads,
                    audit_violations: log.audit.violations,
                }
            })
            .collect();
        Campaign { runs, elapsed: t0.elapsed() }
    })
}

fn first_failure(c: &Campaign, pred: impl Fn(&CampaignRun) -> bool) -> String {
    c.runs
        .iter()
        .find(|r| !pred(r))
        .map(|r| format!(", first failure {} at delta {}", r.instance, r.delta))
        .unwrap_or_default()
}

fn observation_campaign() -> Outcome {
    let c = campaign();
    let bad_cost = c.runs.iter().filter(|r| !r.cost_ok).count();
    let bad_charge = c.runs.iter().filter(|r| !r.charges_ok).count();
    let ok = c.runs.len() >= 1000 && bad_cost == 0 && bad_charge == 0 && c.elapsed < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "{} runs, {bad_cost} cost-bound violations, {bad_charge} charge violations, {:.1}s{}",
            c.runs.len(),
            c.elapsed.as_secs_f64(),
            first_failure(c, |r| r.cost_ok && r.charges_ok)
        ),
    )
}

fn cycle_property_campaign() -> Outcome {
    let c = campaign();
    let bad = c.runs.iter().filter(|r| !r.minimal_ok).count();
    let enumerated = c.runs.iter().filter(|r| r.enumerated).count();
    let disagree = c.runs.iter().filter(|r| !r.oracles_agree).count();
    outcome(
        bad == 0 && disagree == 0 && enumerated > 0,
        format!(
            "{} runs, {bad} minimality violations, cycle enumeration on {enumerated} runs with {disagree} disagreements{}",
            c.runs.len(),
            first_failure(c, |r| r.minimal_ok && r.oracles_agree)
        ),
    )
}

fn purity_audit() -> Outcome {
    let c = campaign();
    let reads: u64 = c.runs.iter().map(|r| r.audit_reads).sum();
    let violations: u64 = c.runs.iter().map(|r| r.audit_violations).sum();
    outcome(violations == 0 && reads > 0, format!("{reads} audited reads over {} runs, {violations} violations", c.runs.len()))
}

// ---------------------------------------------------------------------------
// 4, 5. competitive ratio on known-genus families at δ = 2

fn competitive(instances: Vec<Instance>, genus: u32) -> Outcome {
    let delta = Rational::integer(2);
    let bound = blocking_competitive_bound(genus, delta);
    let lightness = spanner_lightness_bound(genus, delta);
    let results: Vec<(String, Rational, bool)> = instances
        .par_iter()
        .map(|inst| {
            let g = &inst.graph;
            let log = run_blocking(g, ExplorationParams::new(delta, inst.start)).unwrap();
            let chain = verify_cost_chain(g, &log, delta, Some(lightness)).unwrap();
            (inst.id.clone(), log.total_cost / mst_weight(g), chain.passed())
        })
        .collect();
    let max = results.iter().map(|r| r.1).max().unwrap();
    let worst = &results.iter().max_by_key(|r| r.1).unwrap().0;
    let chain_ok = results.iter().all(|r| r.2);
    outcome(
        results.len() == 50 && max <= bound && chain_ok,
        format!("{} runs, max ratio {} ({worst}) <= {}, cost chain holds: {chain_ok}", results.len(), fmt(max), fmt(bound)),
    )
}

fn planar_instances() -> Vec<Instance> {
    (0..50u64).map(|i| build(Family::RandomPlanar { points: 200 + 6 * i as usize }, 500 + i)).collect()
}

fn toroidal_instances() -> Vec<Instance> {
    (0..50u64)
        .map(|i| {
            let (p, q) = if i == 49 { (40, 40) } else { (3 + (i as usize * 7) % 38, 3 + (i as usize * 13) % 38) };
            build(Family::ToroidalGrid { p, q, weights: WeightDist::one_to_two() }, 700 + i)
        })
        .collect()
}

fn competitive_planar() -> Outcome {
    competitive(planar_instances(), 0)
}

fn competitive_toroidal() -> Outcome {
    competitive(toroidal_instances(), 1)
}

// ---------------------------------------------------------------------------
// 6, 7, 8. greedy spanners

struct SpannerRun {
    instance: Instance,
    result: SpannerResult,
    bound: Rational,
}

fn spanner_runs(genus: u32) -> &'static Vec<SpannerRun> {
    static PLANAR: OnceLock<Vec<SpannerRun>> = OnceLock::new();
    static TORUS: OnceLock<Vec<SpannerRun>> = OnceLock::new();
    let (cell, instances, epsilons): (_, fn() -> Vec<Instance>, Vec<Rational>) = match genus {
        0 => (&PLANAR, planar_instances, vec![r(1, 2), r(1, 1), r(2, 1)]),
        _ => (&TORUS, toroidal_instances, vec![r(1, 2), r(1, 1)]),
    };
    cell.get_or_init(|| {
        let instances = instances();
        let jobs: Vec<_> = instances.iter().flat_map(|i| epsilons.iter().map(move |e| (i, *e))).collect();
        jobs.par_iter()
            .map(|(inst, eps)| SpannerRun {
                instance: (*inst).clone(),
                result: greedy_spanner(&inst.graph, *eps).unwrap(),
                bound: spanner_lightness_bound(genus, *eps),
            })
            .collect()
    })
}

fn lightness_check(runs: &[SpannerRun]) -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    let mut epsilons: Vec<Rational> = runs.iter().map(|r| r.result.epsilon).collect();
    epsilons.sort();
    epsilons.dedup();
    for eps in epsilons {
        let of_eps: Vec<_> = runs.iter().filter(|r| r.result.epsilon == eps).collect();
        let max = of_eps.iter().map(|r| r.result.lightness).max().unwrap();
        let bound = of_eps[0].bound;
        ok &= of_eps.len() == 50 && of_eps.iter().all(|r| r.result.lightness <= r.bound);
        parts.push(format!("eps {eps}: max {} <= {}", fmt(max), fmt(bound)));
    }
    (ok, parts.join("; "))
}

fn lightness_planar() -> Outcome {
    let (mut ok, mut detail) = lightness_check(spanner_runs(0));
    let mut compared = 0;
    let mut below = 0;
    for seed in 0..40u64 {
        let inst = build(Family::RandomPlanar { points: 4 + seed as usize % 5 }, 900 + seed);
        if inst.graph.edge_count() > OPTSPAN_MAX_EDGES {
            continue;
        }
        for eps in [r(1, 2), r(1, 1), r(2, 1)] {
            let greedy = greedy_spanner(&inst.graph, eps).unwrap().lightness;
            let optimum = brute_force_optspan(&inst.graph, eps).unwrap();
            compared += 1;
            if greedy < optimum {
                below += 1;
            }
        }
    }
    ok &= below == 0 && compared > 0;
    detail.push_str(&format!("; brute-force optimum <= greedy on {}/{compared}", compared - below));
    outcome(ok, detail)
}

fn lightness_toroidal() -> Outcome {
    let (ok, detail) = lightness_check(spanner_runs(1));
    outcome(ok, detail)
}

fn spanner_structure() -> Outcome {
    let runs: Vec<&SpannerRun> = spanner_runs(0).iter().chain(spanner_runs(1)).collect();
    let failures: Vec<String> = runs
        .par_iter()
        .filter_map(|run| {
            let g = &run.instance.graph;
            let h = &run.result.edges;
            let eps = run.result.epsilon;
            let contains = verify_mst_containment(g, h).unwrap().passed();
            let (sub, _) = g.subgraph(h).unwrap();
            let minimal = verify_spanner_minimality(&sub, eps).unwrap().passed();
            let mode = if g.vertex_count() <= 200 {
                StretchMode::Exact
            } else {
                StretchMode::Sampled { seed: 1, count: 400 }
            };
            let stretch = verify_spanner_stretch(g, h, eps, mode).unwrap().passed();
            let certificate = run.result.stretch_certificate <= Rational::one() + eps;
            (!(contains && minimal && stretch && certificate)).then(|| {
                format!("{} eps {eps}: mst {contains} minimal {minimal} stretch {stretch}", run.instance.id)
            })
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!("{} spanners, {} failing{}", runs.len(), failures.len(), failures.first().map(|f| format!(", e.g. {f}")).unwrap_or_default()),
    )
}

// ---------------------------------------------------------------------------
// 9. δ = log2 n sweep

fn log_sweep() -> Outcome {
    let sizes = [16usize, 64, 256, 1024, 4096];
    // the planar guarantee 2(δ+2)(1+2/δ) divided by δ is at most 9/2 once δ >= 4
    let constant = r(9, 2);
    let mut ok = true;
    let mut parts = Vec::new();
    type Maker = fn(usize) -> Family;
    let families: [(&str, Maker); 2] = [
        ("grid", |n| {
            let side = (n as f64).sqrt() as usize;
            Family::Grid { rows: side, cols: side, weights: WeightDist::one_to_two() }
        }),
        ("planar", |n| Family::RandomPlanar { points: n }),
    ];
    for (name, make) in families {
        let values: Vec<Rational> = sizes
            .par_iter()
            .map(|&n| {
                let inst = build(make(n), 42);
                let log2 = Rational::log2_approx(n as u64, r(1, 1 << 20));
                let log = run_blocking(&inst.graph, ExplorationParams::new(log2, 0)).unwrap();
                log.total_cost / mst_weight(&inst.graph) / log2
            })
            .collect();
        let mut sorted = values.clone();
        sorted.sort();
        let median = sorted[sorted.len() / 2];
        let last = *values.last().unwrap();
        let max = sorted[sorted.len() - 1];
        ok &= max <= constant && last <= r(3, 2) * median;
        parts.push(format!(
            "{name} ratio/log2n [{}], last {} vs 1.5*median {}",
            values.iter().map(|v| format!("{:.3}", v.to_f64())).collect::<Vec<_>>().join(", "),
            fmt(last),
            fmt(r(3, 2) * median)
        ));
    }
    outcome(ok, format!("bounded by {}; {}", fmt(constant), parts.join("; ")))
}

// ---------------------------------------------------------------------------
// 10. TSP oracle soundness

fn tsp_oracles() -> Outcome {
    let u = WeightDist::one_to_two;
    let graphs: Vec<Graph> = (0..200u64)
        .map(|seed| {
            let n = 2 + seed as usize % 7;
            let family = match seed % 4 {
                0 => Family::RandomTree { n, weights: u() },
                1 => Family::RandomPlanar { points: n.max(3) },
                _ => Family::ErdosRenyi { n, p: 0.5, weights: u() },
            };
            build(family, seed).graph
        })
        .collect();
    let mismatches = graphs
        .par_iter()
        .filter(|g| exact_tsp(g).unwrap().cost != brute_force_tsp(g).unwrap())
        .count();
    let mut sandwich_checked = 0;
    let mut sandwich_bad = 0;
    let extra: Vec<Graph> = (0..40u64).map(|s| build(Family::RandomPlanar { points: 9 + s as usize % 7 }, s).graph).collect();
    for g in graphs.iter().chain(&extra) {
        let (lo, hi) = mst_bounds(g).unwrap();
        let opt = exact_tsp(g).unwrap().cost;
        sandwich_checked += 1;
        if !(lo <= opt && opt <= hi) {
            sandwich_bad += 1;
        }
    }
    outcome(
        mismatches == 0 && sandwich_bad == 0,
        format!("{} Held-Karp vs permutation comparisons, {mismatches} mismatches; sandwich on {sandwich_checked}, {sandwich_bad} violations", graphs.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("comb lower bound", comb_lower_bound),
        ("cost charging over campaign", observation_campaign),
        ("long cycles in B ∪ MST_B", cycle_property_campaign),
        ("competitive ratio, planar", competitive_planar),
        ("competitive ratio, genus 1", competitive_toroidal),
        ("spanner lightness, planar", lightness_planar),
        ("spanner lightness, genus 1", lightness_toroidal),
        ("spanner MST containment and minimality", spanner_structure),
        ("log2 n sweep", log_sweep),
        ("TSP oracle soundness", tsp_oracles),
        ("online access audit", purity_audit),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = check();
        failed += usize::from(!o.passed);
        println!(
            "criterion {:>2} {}: {} ({}) [{:.1}s]",
            i + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            t0.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
