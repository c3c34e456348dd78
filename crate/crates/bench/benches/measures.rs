use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use entop::gates::GateSpec;
use entop::measures::{
    concurrence_two_term, entangling_power_direct, entangling_power_mc, CapPolicy,
};
use entop::tensor::kron;
use entop::{linear_entropy, schmidt_spectrum};
use entop_bench::haar_operator;

fn bench_kron(c: &mut Criterion) {
    let mut group = c.benchmark_group("kron");
    for d in [4usize, 8, 16] {
        let a = haar_operator(2, d / 2, 1);
        let b = haar_operator(2, d / 2, 2);
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |bench, _| {
            bench.iter(|| kron(black_box(a.op()), black_box(b.op())).unwrap())
        });
    }
    group.finish();
}

fn bench_spectrum_route(c: &mut Criterion) {
    let mut group = c.benchmark_group("linear_entropy/spectrum");
    for (d1, d2) in [(2usize, 2usize), (2, 3), (3, 3), (4, 4)] {
        let u = haar_operator(d1, d2, 3);
        let id = BenchmarkId::from_parameter(format!("{d1}x{d2}"));
        group.bench_with_input(id, &u, |bench, u| {
            bench.iter(|| linear_entropy(&schmidt_spectrum(black_box(u)).unwrap()))
        });
    }
    group.finish();
}

fn bench_fold4_power(c: &mut Criterion) {
    let mut group = c.benchmark_group("entangling_power/direct");
    group.sample_size(20);
    for (d1, d2) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let u = haar_operator(d1, d2, 4);
        let id = BenchmarkId::from_parameter(format!("{d1}x{d2}"));
        group.bench_with_input(id, &u, |bench, u| {
            bench.iter(|| entangling_power_direct(black_box(u), CapPolicy::Enforce).unwrap())
        });
    }
    group.finish();
}

fn bench_mc_power(c: &mut Criterion) {
    let u = GateSpec::Cnot.build().unwrap();
    let mut group = c.benchmark_group("entangling_power/mc");
    group.sample_size(20);
    for n in [1_000u64, 10_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            bench.iter(|| entangling_power_mc(black_box(&u), n, 42).unwrap())
        });
    }
    group.finish();
}

fn bench_concurrence_routes(c: &mut Criterion) {
    let spec = GateSpec::Spin { theta: 0.4, two_j: 5 };
    let gate = spec.build().unwrap();
    let decomposition = spec.two_term().unwrap();
    let mut group = c.benchmark_group("concurrence");
    group.bench_function("spectrum", |bench| {
        bench.iter(|| {
            entop::concurrence_from_spectrum(&schmidt_spectrum(black_box(&gate)).unwrap())
                .unwrap()
        })
    });
    group.bench_function("two_term", |bench| {
        bench.iter(|| concurrence_two_term(black_box(&decomposition)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_kron,
    bench_spectrum_route,
    bench_fold4_power,
    bench_mc_power,
    bench_concurrence_routes
);
criterion_main!(benches);
