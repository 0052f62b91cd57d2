use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fuchs_bench::{cyclic_groups, decide_cases};
use fuchs_core::finring::corpus;
use fuchs_core::radical::enumerate_radical_rings;
use fuchs_core::realize::{certificate_check, decide_any, decide_tn, g_value};
use fuchs_core::FgAbGroup;
use std::hint::black_box;

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_any");
    for (name, g) in decide_cases() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| decide_any(black_box(g)))
        });
    }
    group.finish();
}

fn check(c: &mut Criterion) {
    let verdicts: Vec<_> = decide_cases()
        .iter()
        .map(|(_, g)| decide_any(g))
        .filter(|v| !v.is_unknown())
        .collect();
    c.bench_function("certificate_check", |b| {
        b.iter(|| {
            for v in &verdicts {
                black_box(certificate_check(v).ok());
            }
        })
    });
}

fn cyclic_table(c: &mut Criterion) {
    let groups = cyclic_groups(1000);
    c.bench_function("cyclic_tn_table_1000", |b| {
        b.iter(|| {
            groups
                .iter()
                .filter(|t| decide_tn(&FgAbGroup::finite((*t).clone())).is_realisable())
                .count()
        })
    });
    c.bench_function("g_value_1000", |b| {
        b.iter(|| groups.iter().filter_map(|t| g_value(t).ok()).sum::<u64>())
    });
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("radical_enumeration");
    group.sample_size(10);
    for (p, k) in [(2u64, 3u32), (3, 3), (2, 4)] {
        group.bench_function(format!("{p}^{k}"), |b| {
            b.iter(|| enumerate_radical_rings(p, k, 1 << 12).unwrap().len())
        });
    }
    group.finish();
    c.bench_function("corpus_unit_groups", |b| {
        b.iter(|| {
            for e in corpus().unwrap() {
                black_box(e.ring.unit_group().unwrap());
            }
        })
    });
}

criterion_group!(benches, decide, check, cyclic_table, oracles);
criterion_main!(benches);
