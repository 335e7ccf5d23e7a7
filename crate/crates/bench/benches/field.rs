use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use galois_scope::poly::factor::{factor, Poly};
use galois_scope::{Fe, Field, GaloisField};

fn arithmetic(c: &mut Criterion) {
    let mut g = c.benchmark_group("field");
    for (p, n) in [(3, 4), (7, 2), (2, 12)] {
        let k = GaloisField::get(p, n).unwrap();
        let els: Vec<Fe> = k.elements().skip(1).take(256).collect();
        g.bench_with_input(BenchmarkId::new("mul_inv", format!("GF({p}^{n})")), &els, |b, els| {
            b.iter(|| els.iter().fold(k.one(), |acc, x| k.mul(&acc, &k.inv(black_box(x)))))
        });
    }
    g.finish();
}

fn factoring(c: &mut Criterion) {
    let k = GaloisField::get(3, 2).unwrap();
    // x^80 - 1 splits completely over GF(81) but only partly over GF(9)
    let mut coeffs = vec![Fe(0); 81];
    coeffs[0] = k.neg(&k.one());
    coeffs[80] = k.one();
    let g = Poly::from_coeffs(coeffs, &*k);
    c.bench_function("factor x^80-1 over GF(9)", |b| {
        b.iter(|| factor(black_box(&g), &k).unwrap())
    });
}

criterion_group!(benches, arithmetic, factoring);
criterion_main!(benches);
