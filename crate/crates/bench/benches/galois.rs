use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use galois_scope::covers::analyze_cover;
use galois_scope::galois::{delta_scan, galois_test, Engine, GaloisConfig};
use galois_scope_bench::{cover, first_point, generic_quartic, hermitian};

fn point_tests(c: &mut Criterion) {
    let h = hermitian();
    let g = generic_quartic();
    let (hp, gp) = (first_point(&h), first_point(&g));
    let mut grp = c.benchmark_group("galois_test");
    for engine in [Engine::Filter, Engine::Certificate, Engine::Exact] {
        let cfg = GaloisConfig {
            engine,
            ..GaloisConfig::default()
        };
        grp.bench_function(format!("hermitian/{engine}"), |b| {
            b.iter(|| galois_test(&h, black_box(&hp), &cfg).unwrap())
        });
        grp.bench_function(format!("generic/{engine}"), |b| {
            b.iter(|| galois_test(&g, black_box(&gp), &cfg).unwrap())
        });
    }
    grp.finish();
}

fn census(c: &mut Criterion) {
    let h = hermitian();
    let mut grp = c.benchmark_group("census");
    grp.sample_size(10);
    for jobs in [1, 4] {
        let cfg = GaloisConfig {
            jobs,
            ..GaloisConfig::default()
        };
        grp.bench_function(format!("hermitian ext_max 2, jobs {jobs}"), |b| {
            b.iter(|| delta_scan(&h, &cfg).unwrap())
        });
    }
    grp.finish();
}

fn covers(c: &mut Criterion) {
    let theta = cover("s^9 - s", 3);
    c.bench_function("cover s^9-s over GF(3)", |b| {
        b.iter(|| analyze_cover(black_box(&theta), 2).unwrap())
    });
}

criterion_group!(benches, point_tests, census, covers);
criterion_main!(benches);
