use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gabidulin_bench::{elements, poly, tower};
use std::hint::black_box;

fn field(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    for (p, g) in [(5, 2), (13, 2), (37, 2)] {
        let t = tower(p, g);
        let xs = elements(&t, 2, 1, 9);
        group.bench_with_input(BenchmarkId::new("mul", p), &xs, |b, xs| b.iter(|| black_box(&xs[0] * &xs[1])));
        group.bench_with_input(BenchmarkId::new("inv", p), &xs, |b, xs| b.iter(|| black_box(xs[0].inv().unwrap())));
        group.bench_with_input(BenchmarkId::new("theta", p), &xs, |b, xs| b.iter(|| black_box(xs[0].theta())));
    }
    group.finish();
}

fn skew(c: &mut Criterion) {
    let mut group = c.benchmark_group("skew");
    let t = tower(13, 2);
    for d in [2, 4, 8] {
        let (a, b) = (poly(&t, d, 1), poly(&t, d, 2));
        group.bench_with_input(BenchmarkId::new("mul", d), &d, |bench, _| bench.iter(|| black_box(&a * &b)));
        let prod = &a * &b;
        group.bench_with_input(BenchmarkId::new("right_divide", d), &d, |bench, _| {
            bench.iter(|| black_box(prod.right_divide(&b).unwrap()))
        });
        let x = elements(&t, 1, 3, 9).remove(0);
        group.bench_with_input(BenchmarkId::new("evaluate", d), &d, |bench, _| bench.iter(|| black_box(a.evaluate(&x))));
    }
    group.finish();
}

criterion_group!(benches, field, skew);
criterion_main!(benches);
