use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hj_core::circuit::encode_longhand;
use hj_core::graph::Graph;
use hj_core::par::Exec;
use hj_core::problems::{reduce_3col, ReductionMode};
use hj_core::subgraph::find_forbidden_with;
use hj_core::verify::{random_circuit, verify_3col_cos, verify_s3col_scos};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn materialize(c: &mut Criterion) {
    let mut group = c.benchmark_group("materialize");
    let longhand = encode_longhand(&Graph::cycle(9)).unwrap();
    let random = random_circuit(10, 8, &mut ChaCha8Rng::seed_from_u64(1));
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "longhand C9"), &longhand, |b, phi| {
            b.iter(|| phi.materialize_with(18, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new(name, "random m=10"), &random, |b, phi| {
            b.iter(|| phi.materialize_with(18, exec).unwrap())
        });
    }
    group.finish();
}

fn forbidden(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_forbidden");
    // contains every 5-vertex graph, so the whole catalog is searched
    let art = reduce_3col(&Graph::cycle(30), ReductionMode::Generalized { p: 5 }).unwrap();
    let g = art.instance.graph().clone();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, g.vertex_count()), |b| {
            b.iter(|| find_forbidden_with(black_box(&g), 5, exec).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "3col-cos n<=5"), |b| {
            b.iter(|| verify_3col_cos(5, 50, 7, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new(name, "s3col-scos m=3"), |b| {
            b.iter(|| verify_s3col_scos(3, 10, 7, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, materialize, forbidden, suites);
criterion_main!(benches);
