use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gysin_bench::{degree_input, power_of_sum};
use gysin_core::oracle::stepwise_pushforward_a;
use gysin_core::{pushforward, BaseMode, FlagGeometry, StrictPartition, Twist};
use std::hint::black_box;

fn grassmannians(c: &mut Criterion) {
    let mut group = c.benchmark_group("grassmannian_degree");
    for (d, n) in [(2, 6), (3, 6), (3, 7), (4, 8)] {
        let g = FlagGeometry::a_flag(n, vec![d]).unwrap().with_base(BaseMode::Trivial);
        let f = degree_input(&g);
        group.bench_with_input(BenchmarkId::from_parameter(format!("G({d},{n})")), &f, |b, f| {
            b.iter(|| pushforward(black_box(f), &g, false).unwrap())
        });
    }
    group.finish();
}

fn isotropic(c: &mut Criterion) {
    let mut group = c.benchmark_group("isotropic");
    for n in [2, 3, 4] {
        let g = FlagGeometry::c_flag(n, vec![n], Twist::Zero).unwrap().with_base(BaseMode::Trivial);
        let f = degree_input(&g);
        group.bench_with_input(BenchmarkId::new("LG", n), &f, |b, f| {
            b.iter(|| pushforward(black_box(f), &g, false).unwrap())
        });
    }
    let g = FlagGeometry::bd_flag(7, vec![1, 3], Twist::Formal).unwrap();
    let f = power_of_sum(3, 10);
    group.bench_function("BD rank 7 dims 1,3 formal", |b| {
        b.iter(|| pushforward(black_box(&f), &g, false).unwrap())
    });
    group.finish();
}

fn closed_vs_stepwise(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_flag_5");
    let dims = vec![1, 2, 3, 4];
    let g = FlagGeometry::a_flag(5, dims.clone()).unwrap();
    let f = power_of_sum(4, 12);
    group.bench_function("closed", |b| b.iter(|| pushforward(black_box(&f), &g, false).unwrap()));
    group.bench_function("stepwise", |b| {
        b.iter(|| stepwise_pushforward_a(black_box(&f), 5, &dims).unwrap())
    });
    group.finish();
}

fn kempf_laksov(c: &mut Criterion) {
    let mu = StrictPartition::new(vec![6, 4, 2]).unwrap();
    let g = FlagGeometry::kl_c(4, mu, Twist::Formal).unwrap();
    let f = power_of_sum(3, 9);
    c.bench_function("kl_c n=4 mu=6,4,2", |b| b.iter(|| pushforward(black_box(&f), &g, false).unwrap()));
}

criterion_group!(benches, grassmannians, isotropic, closed_vs_stepwise, kempf_laksov);
criterion_main!(benches);
