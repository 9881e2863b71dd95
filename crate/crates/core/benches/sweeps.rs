use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use glaisher_core::suite::{run_suite, verify_many, SuiteOptions, TH1_A, TH1_N};
use glaisher_core::{FamilyParams, QuadConfig, Scheme};

fn th1_points() -> Vec<FamilyParams> {
    TH1_N.iter().flat_map(|&n| TH1_A.map(|a| FamilyParams::th1(n, a))).collect()
}

fn theorem1_sweep(c: &mut Criterion) {
    let points = th1_points();
    let mut g = c.benchmark_group("theorem1_sweep");
    for scheme in [Scheme::SubstGauss, Scheme::DoubleExp] {
        let cfg = QuadConfig::default().with_scheme(scheme);
        for (label, parallel) in [("sequential", false), ("parallel", true)] {
            g.bench_with_input(BenchmarkId::new(label, scheme.name()), &cfg, |b, cfg| {
                b.iter(|| verify_many(black_box(&points), cfg, parallel).unwrap())
            });
        }
    }
    g.finish();
}

fn whole_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for (label, parallel) in [("sequential", false), ("parallel", true)] {
        let opts = SuiteOptions { parallel, ..SuiteOptions::default() };
        g.bench_function(label, |b| b.iter(|| run_suite(black_box(&opts))));
    }
    g.finish();
}

criterion_group!(benches, theorem1_sweep, whole_suite);
criterion_main!(benches);
