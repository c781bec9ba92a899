use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use shi_bench::{chain_kb, fixed_kbs, CHAIN_LENGTHS};
use shi_core::{bounded_model_search, decide_sat, extract_model};
use std::hint::black_box;

fn fixed(c: &mut Criterion) {
    let mut g = c.benchmark_group("decide");
    for (name, kb) in fixed_kbs() {
        g.bench_function(name, |b| b.iter(|| decide_sat(black_box(&kb)).satisfiable));
    }
    g.finish();
}

fn chain(c: &mut Criterion) {
    let mut g = c.benchmark_group("chain");
    g.sample_size(10);
    for n in CHAIN_LENGTHS {
        let kb = chain_kb(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &kb, |b, kb| b.iter(|| decide_sat(kb).stats.nodes));
    }
    g.finish();
}

fn model(c: &mut Criterion) {
    let kb = chain_kb(6);
    let v = decide_sat(&kb);
    c.bench_function("extract_model/chain6", |b| b.iter(|| extract_model(&kb, black_box(&v.graph)).unwrap().domain));
    let (_, small) = fixed_kbs().swap_remove(2);
    c.bench_function("oracle/converse/2", |b| b.iter(|| bounded_model_search(black_box(&small), 2).unwrap().is_some()));
}

criterion_group!(benches, fixed, chain, model);
criterion_main!(benches);
