use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spanex_core::instances::{gen_comb_lower_bound, gen_grid, gen_random_planar, WeightDist};
use spanex_core::oracle::exact_tsp;
use spanex_core::{greedy_spanner, run_blocking, run_nearest_neighbor, ExplorationParams, Rational, TieBreak};

fn blocking_on_grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("blocking_grid");
    group.sample_size(10);
    for side in [8usize, 16, 32] {
        let g = gen_grid(side, side, &WeightDist::one_to_two(), 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(side * side), &g, |b, g| {
            b.iter(|| run_blocking(g, ExplorationParams::new(Rational::integer(2), 0)).unwrap())
        });
    }
    group.finish();
}

fn blocking_on_comb(c: &mut Criterion) {
    let mut group = c.benchmark_group("blocking_comb");
    group.sample_size(10);
    for k in [25usize, 100] {
        let comb = gen_comb_lower_bound(k, Rational::integer(3)).unwrap();
        let params = ExplorationParams::new(Rational::integer(3), comb.start).with_tie_break(TieBreak::Adversarial(comb.script));
        group.bench_with_input(BenchmarkId::from_parameter(k), &comb.graph, |b, g| {
            b.iter(|| run_blocking(g, params.clone()).unwrap())
        });
    }
    group.finish();
}

fn nearest_neighbor_on_planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("nearest_neighbor_planar");
    group.sample_size(10);
    for points in [100usize, 400] {
        let g = gen_random_planar(points, 7).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(points), &g, |b, g| {
            b.iter(|| run_nearest_neighbor(g, 0).unwrap())
        });
    }
    group.finish();
}

fn greedy_spanner_on_planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_spanner_planar");
    group.sample_size(10);
    for points in [100usize, 400, 1600] {
        let g = gen_random_planar(points, 3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(points), &g, |b, g| {
            b.iter(|| greedy_spanner(g, Rational::one()).unwrap())
        });
    }
    group.finish();
}

fn held_karp(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_tsp");
    group.sample_size(10);
    for points in [8usize, 12, 15] {
        let g = gen_random_planar(points, 5).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(points), &g, |b, g| b.iter(|| exact_tsp(g).unwrap()));
    }
    group.finish();
}

criterion_group!(
    benches,
    blocking_on_grids,
    blocking_on_comb,
    nearest_neighbor_on_planar,
    greedy_spanner_on_planar,
    held_karp
);
criterion_main!(benches);
