use criterion::{criterion_group, criterion_main, Criterion};
use ea_core::{canonical_form, derive, enumerate_all, generate, validate_ea, verify_triple_theorem, GeneratorSpec};
use std::hint::black_box;

fn gen(s: &str) -> ea_core::EffectAlgebra {
    generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_all(6)", |b| b.iter(|| enumerate_all(black_box(6)).unwrap()));
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("enumerate_all(7)", |b| b.iter(|| enumerate_all(black_box(7)).unwrap()));
    g.finish();
}

fn per_algebra(c: &mut Criterion) {
    for spec in ["boolean 4", "product(chain 3, diamond)", "mo 3"] {
        let e = gen(spec);
        let d = derive(&e).unwrap();
        c.bench_function(&format!("validate_ea/{spec}"), |b| b.iter(|| validate_ea(black_box(&e))));
        c.bench_function(&format!("canonical_form/{spec}"), |b| b.iter(|| canonical_form(black_box(&e)).unwrap()));
        c.bench_function(&format!("verify_triple_theorem/{spec}"), |b| {
            b.iter(|| verify_triple_theorem(black_box(&d)).unwrap())
        });
    }
}

criterion_group!(benches, enumeration, per_algebra);
criterion_main!(benches);
