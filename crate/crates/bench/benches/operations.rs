use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use treeaut::ops::{check_inclusion_antichain, determinise, downward_simulation, intersection, minimise, union};
use treeaut_bench::{one_rule_per_symbol, random_pair};

fn alphabet_growth(c: &mut Criterion) {
    let mut g = c.benchmark_group("alphabet");
    for bits in [4u32, 8, 11, 14] {
        let (mut m, a, b) = one_rule_per_symbol(bits);
        g.bench_with_input(BenchmarkId::new("union", 1u32 << bits), &bits, |bench, _| {
            bench.iter(|| union(&mut m, black_box(&a), black_box(&b)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("simulation", 1u32 << bits), &bits, |bench, _| {
            bench.iter(|| downward_simulation(&mut m, black_box(&a)).unwrap())
        });
    }
    g.finish();
}

fn random_instances(c: &mut Criterion) {
    let mut g = c.benchmark_group("random");
    for states in [4usize, 8, 12] {
        let (mut m, a, b) = random_pair(7, states);
        g.bench_with_input(BenchmarkId::new("intersection", states), &states, |bench, _| {
            bench.iter(|| intersection(&mut m, black_box(&a), black_box(&b)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("determinise", states), &states, |bench, _| {
            bench.iter(|| determinise(&mut m, black_box(&a)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("minimise", states), &states, |bench, _| {
            bench.iter(|| minimise(&mut m, black_box(&a)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("inclusion", states), &states, |bench, _| {
            bench.iter(|| check_inclusion_antichain(&mut m, black_box(&a), black_box(&b)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, alphabet_growth, random_instances);
criterion_main!(benches);
