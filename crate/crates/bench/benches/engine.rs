use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use qkdiff_bench::{cy_limit, pform, pform_residues, point_condition_i};

fn generators(c: &mut Criterion) {
    let mut g = c.benchmark_group("pform");
    g.sample_size(10);
    for qdeg in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::new("N=2", qdeg), &qdeg, |b, &d| {
            b.iter(|| pform(2, black_box(d)))
        });
    }
    g.finish();
    c.bench_function("cy_limit D=4", |b| b.iter(|| cy_limit(black_box(4))));
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(10);
    g.bench_function("residues N=2 D=3", |b| b.iter(|| pform_residues(2, black_box(3))));
    g.bench_function("condition (i) D=6", |b| b.iter(|| point_condition_i(black_box(6), 8)));
    g.finish();
}

criterion_group!(benches, generators, checks);
criterion_main!(benches);
