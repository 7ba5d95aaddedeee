use std::hint::black_box;

use beta10::bijection::tree_to_map;
use beta10::fixed_points::enumerate_fixed;
use beta10::h;
use beta10::series::{census_a, lagrange_u};
use beta10::tree::generate_all;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate_all");
    for n in [7, 9] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| generate_all(black_box(n)).count())
        });
    }
    g.finish();
}

fn involution(c: &mut Criterion) {
    let trees: Vec<_> = generate_all(9).collect();
    c.bench_function("h over all 9-node trees", |b| {
        b.iter(|| {
            trees
                .iter()
                .map(|t| h(black_box(t)).label() as u64)
                .sum::<u64>()
        })
    });
}

fn fixed_points(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_fixed");
    for n in [10, 14] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_fixed(black_box(n)).count())
        });
    }
    g.finish();
}

fn maps(c: &mut Criterion) {
    let trees: Vec<_> = generate_all(8).collect();
    c.bench_function("tree_to_map over all 8-node trees", |b| {
        b.iter(|| {
            trees
                .iter()
                .map(|t| tree_to_map(black_box(t)).edge_count())
                .sum::<usize>()
        })
    });
    let maps: Vec<_> = trees.iter().map(tree_to_map).collect();
    c.bench_function("canonical_code over all 8-edge maps", |b| {
        b.iter(|| {
            maps.iter()
                .map(|m| black_box(m).canonical_code().0.len())
                .sum::<usize>()
        })
    });
    c.bench_function("dual + code over all 8-edge maps", |b| {
        b.iter(|| maps.iter().filter(|m| black_box(m).is_self_dual()).count())
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("census_a order 10", |b| b.iter(|| census_a(black_box(10))));
    c.bench_function("lagrange_u order 20", |b| {
        b.iter(|| lagrange_u(black_box(20)))
    });
}

criterion_group!(benches, generation, involution, fixed_points, maps, series);
criterion_main!(benches);
