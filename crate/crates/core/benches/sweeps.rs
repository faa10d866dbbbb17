//! Sequential against data-parallel execution for the batch workloads, plus the
//! single-automaton kernels they are built from.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use synchro::generators::{cerny, circular, fixture, Fixture};
use synchro::oracle::reachability_table;
use synchro::reachability::verify_all_subsets;
use synchro::survey::{run_survey, SurveyConfig, SurveyFamily};
use synchro::{circular_fast_path, find_aperiodic_collection, Execution};

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn survey(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey");
    group.sample_size(10);
    let families = [
        ("exhaustive-3-2", SurveyFamily::Exhaustive { n: 3, k: 2 }),
        ("random-8-2x200", SurveyFamily::Random { n: 8, k: 2, count: 200, seed: 1 }),
    ];
    for (name, family) in families {
        let config = SurveyConfig::new(family);
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &config, |b, cfg| {
                b.iter(|| run_survey(black_box(cfg), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn all_subsets(c: &mut Criterion) {
    let mut group = c.benchmark_group("all-subsets");
    for n in [10usize, 14] {
        let a = circular(n, 1, Some(3)).unwrap();
        let w = circular_fast_path(&a).unwrap().collection;
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, n), &(&a, &w), |b, (a, w)| {
                b.iter(|| verify_all_subsets(a, w, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernels");
    for n in [12usize, 16] {
        let a = cerny(n).unwrap();
        group.bench_with_input(BenchmarkId::new("oracle-bfs-cerny", n), &a, |b, a| {
            b.iter(|| reachability_table(black_box(a), 20).unwrap())
        });
    }
    let fig4 = fixture(Fixture::Fig4);
    group.bench_function("collection-search-fig4", |b| {
        b.iter(|| find_aperiodic_collection(black_box(&fig4), 6).unwrap())
    });
    group.finish();
}

criterion_group!(benches, survey, all_subsets, kernels);
criterion_main!(benches);
