use balprod::builders::{random_lift_seed, repetition_seed};
use balprod::css::{analyze, block_logicals, logical_basis_with, subsystem_restrict, Side};
use balprod::distance::{distance_exhaustive, distance_mitm, Pauli, SearchConfig};
use balprod::lps::lps_graph;
use balprod::par;
use balprod::products::balanced_product;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const POOLS: [(&str, Option<usize>); 2] = [("1-thread", Some(1)), ("default", None)];

fn exhaustive(c: &mut Criterion) {
    let seed = repetition_seed(5, 4).unwrap();
    let pair = balanced_product(&seed);
    let code = analyze(pair.clone()).unwrap();
    let right = block_logicals(&seed, &pair, Some(Side::Right)).unwrap();
    code.set_logicals(logical_basis_with(&code, &right).unwrap()).unwrap();
    let view = subsystem_restrict(&code, &[0]).unwrap();
    let cfg = SearchConfig::default();

    let mut g = c.benchmark_group("exhaustive repetition(5,4) d_X");
    g.sample_size(10);
    for (name, threads) in POOLS {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| par::install(threads, || distance_exhaustive(&view, Pauli::X, 8, &cfg).unwrap()))
        });
    }
    g.finish();
}

fn mitm(c: &mut Criterion) {
    let lps = analyze(balanced_product(&lps_graph(3, 5, false).unwrap().seed)).unwrap();
    let lift = analyze(balanced_product(&random_lift_seed(20, 3, 5, 1).unwrap())).unwrap();
    let cfg = SearchConfig::default();

    let mut g = c.benchmark_group("mitm");
    g.sample_size(10);
    for (name, threads) in POOLS {
        g.bench_function(BenchmarkId::new("lps(3,5) d_Z to 4", name), |b| {
            b.iter(|| par::install(threads, || distance_mitm(&lps, Pauli::Z, 4, &cfg).unwrap()))
        });
        g.bench_function(BenchmarkId::new("random lift n=300 d_X to 5", name), |b| {
            b.iter(|| par::install(threads, || distance_mitm(&lift, Pauli::X, 5, &cfg).unwrap()))
        });
    }
    g.finish();
}

fn elimination(c: &mut Criterion) {
    let pair = balanced_product(&lps_graph(3, 5, false).unwrap().seed);
    c.bench_function("row_reduce lps(3,5) hz", |b| b.iter(|| pair.hz().row_reduce().rank));
}

criterion_group!(benches, exhaustive, mitm, elimination);
criterion_main!(benches);
