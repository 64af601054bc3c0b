use spanex_core::bounds::{comb_ratio_lower_bound, comb_tour_formula};
use spanex_core::exploration::{is_blocked, ExplorationState};
use spanex_core::instances::{gen_comb_lower_bound, Comb};
use spanex_core::{run_blocking, ExplorationParams, Rational, TieBreak};

const K: usize = 25;

fn comb() -> Comb {
    gen_comb_lower_bound(K, Rational::integer(3)).unwrap()
}

/// Id of the leaf edge at spine vertex `i`.
fn leaf(c: &Comb, i: usize) -> usize {
    c.graph.incident(i).iter().copied().find(|&e| c.graph.edge(e).other(i) == 2 * K + i).unwrap()
}

/// State after walking the whole spine and nothing else.
fn spine_explored(c: &Comb) -> ExplorationState {
    let mut s = ExplorationState::new(&c.graph, 0).unwrap();
    for v in 1..2 * K {
        s.mark_explored(&c.graph, v).unwrap();
    }
    s
}

#[test]
fn heavy_leaf_weight_puts_the_blocker_exactly_at_the_limit() {
    let c = comb();
    assert_eq!(c.heavy_weight, Rational::new(13, 2));
    assert_eq!(Rational::integer(4) * c.heavy_weight, Rational::integer(K as i128 + 1));
    assert!(c.warnings.is_empty());
}

#[test]
fn heavy_leaf_blocked_by_light_leaf_at_distance_k_plus_1() {
    let c = comb();
    let s = spine_explored(&c);
    let delta = Rational::integer(3);
    // heavy leaf at spine vertex 2k-1; unit leaf at k-1 is k+1 away
    let check = is_blocked(&s, &c.graph, leaf(&c, 2 * K - 1), delta).unwrap();
    assert!(check.blocked);
    assert_eq!(check.blockers.iter().copied().collect::<Vec<_>>(), vec![2 * K + K - 1]);
    // every heavy leaf at spine vertex k + j is blocked by the unit leaf at j
    for j in 0..K {
        let check = is_blocked(&s, &c.graph, leaf(&c, K + j), delta).unwrap();
        assert!(check.blocked, "heavy leaf {}", K + j);
        assert!(check.blockers.contains(&(2 * K + j)));
    }
}

#[test]
fn heavy_leaf_free_once_nearest_light_leaf_is_k_plus_2_away() {
    let c = comb();
    let mut s = spine_explored(&c);
    // explore the unit leaf at k-1; the next lighter one is at k-2, k+2 away
    s.mark_explored(&c.graph, 2 * K + K - 1).unwrap();
    let check = is_blocked(&s, &c.graph, leaf(&c, 2 * K - 1), Rational::integer(3)).unwrap();
    assert!(!check.blocked);
    assert!(check.blockers.is_empty());
}

#[test]
fn unit_leaves_are_never_blocked() {
    let c = comb();
    let s = spine_explored(&c);
    for j in 0..K {
        assert!(!is_blocked(&s, &c.graph, leaf(&c, j), Rational::integer(3)).unwrap().blocked);
    }
}

#[test]
fn adversarial_run_pays_at_least_k_squared() {
    let c = comb();
    let delta = Rational::integer(3);
    let params = ExplorationParams::new(delta, c.start).with_tie_break(TieBreak::Adversarial(c.script.clone()));
    let log = run_blocking(&c.graph, params).unwrap();
    assert!(log.total_cost >= Rational::integer((K * K) as i128));
    let two_w = Rational::integer(2) * c.graph.total_weight();
    assert!(log.total_cost / two_w >= comb_ratio_lower_bound(K, delta));
}

#[test]
fn benign_tie_break_is_cheaper() {
    let c = comb();
    let delta = Rational::integer(3);
    let adversarial = run_blocking(
        &c.graph,
        ExplorationParams::new(delta, 0).with_tie_break(TieBreak::Adversarial(c.script.clone())),
    )
    .unwrap();
    let benign = run_blocking(&c.graph, ExplorationParams::new(delta, 0)).unwrap();
    assert!(benign.total_cost < adversarial.total_cost);
}

#[test]
fn tour_formula_differs_from_twice_the_weight_by_the_heavy_remainder() {
    for k in [3usize, 10, 25] {
        let delta = Rational::integer(3);
        let c = gen_comb_lower_bound(k, delta).unwrap();
        let two_w = Rational::integer(2) * c.graph.total_weight();
        let gap = Rational::integer(2 * k as i128) / (Rational::one() + delta);
        assert_eq!(two_w - comb_tour_formula(k, delta), gap);
    }
}
