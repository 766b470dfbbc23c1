use criterion::{black_box, criterion_group, criterion_main, Criterion};

use crsym::crmodel::{closure, fixtures::fixture};
use crsym::extend::enumerate_211;
use crsym::gnla::free_gnla;

fn kernels(c: &mut Criterion) {
    c.bench_function("free_gnla depth 10", |b| b.iter(|| free_gnla(black_box(10)).unwrap()));
    c.bench_function("enumerate 211 to depth 9", |b| b.iter(|| enumerate_211(black_box(9)).unwrap()));
    let m = fixture("2123").unwrap();
    let mut g = c.benchmark_group("closure");
    g.sample_size(10);
    g.bench_function("2123", |b| b.iter(|| closure(black_box(&m)).unwrap()));
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
