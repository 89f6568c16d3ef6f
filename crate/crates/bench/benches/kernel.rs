use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use commcrit::criterion::coprime_product_criterion;
use commcrit::permcore::StabChain;
use commcrit::words::{delta_values, WordKind};
use commcrit::{PermGroup, DEFAULT_CAP};
use commcrit_cli::{select, Selection};

fn groups(ids: &[&str]) -> Vec<(String, PermGroup)> {
    let sel = Selection {
        ids: ids.iter().map(|s| s.to_string()).collect(),
        ..Default::default()
    };
    select(&sel)
        .expect("builtin groups")
        .into_iter()
        .map(|g| (g.descriptor.id.clone(), g.group))
        .collect()
}

fn chain_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("stab_chain");
    for (id, g) in groups(&["S4xC3", "PSL2_7", "SL2_5", "A6"]) {
        group.bench_with_input(BenchmarkId::from_parameter(&id), &g, |b, g| {
            b.iter(|| StabChain::build(g.degree(), black_box(g.generators())))
        });
    }
    group.finish();
}

fn delta(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_values");
    for (id, g) in groups(&["S4", "S4xC3", "A5"]) {
        for k in 1..=2 {
            group.bench_with_input(BenchmarkId::new(&id, k), &k, |b, &k| {
                b.iter(|| {
                    let fresh = PermGroup::new(g.degree(), g.generators().to_vec()).unwrap();
                    delta_values(&fresh, k, DEFAULT_CAP).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn pair_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("criterion");
    group.sample_size(20);
    for (id, g) in groups(&["S4xC3", "A6"]) {
        g.elements(DEFAULT_CAP).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(&id), &g, |b, g| {
            b.iter(|| coprime_product_criterion(g, 1, WordKind::Delta, DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, chain_build, delta, pair_scan);
criterion_main!(benches);
