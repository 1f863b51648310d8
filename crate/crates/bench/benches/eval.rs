use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slnfoam::foameval::{eval_with, EvalOptions};
use slnfoam_bench::{delta_theta, suspension, unit_gen_theta};

fn bench_eval(c: &mut Criterion) {
    let opts = EvalOptions::default();
    let mut g = c.benchmark_group("eval");
    for (a, b) in [(1, 1), (2, 2), (2, 3)] {
        let f = delta_theta(a, b);
        g.bench_with_input(BenchmarkId::new("theta", format!("{a},{b}")), &f, |bch, f| {
            bch.iter(|| eval_with(black_box(f), &opts).unwrap())
        });
    }
    for n in [3, 4, 5] {
        let f = suspension(n);
        g.bench_with_input(BenchmarkId::new("suspension", n), &f, |bch, f| bch.iter(|| eval_with(black_box(f), &opts).unwrap()));
    }
    for k in [3, 4] {
        let f = unit_gen_theta(k);
        g.bench_with_input(BenchmarkId::new("gen_theta", k), &f, |bch, f| bch.iter(|| eval_with(black_box(f), &opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_eval);
criterion_main!(benches);
