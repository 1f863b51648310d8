use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use slnfoam::moyflag::{gram_matrix, lr_via_foam};
use slnfoam::schur::{lr_coeffs, schur_with, Convention, SchurMethod, VarSet, YoungDiagram};

fn schur_methods(c: &mut Criterion) {
    let lam = YoungDiagram::from_rows(&[3, 2, 1]);
    let vars = VarSet::new((0..4).collect());
    for (name, m) in [
        ("bialternant", SchurMethod::Bialternant),
        ("tableaux", SchurMethod::Tableaux),
        ("jacobi_trudi", SchurMethod::JacobiTrudi),
    ] {
        c.bench_function(&format!("schur/{name}"), |b| {
            b.iter(|| schur_with(m, black_box(&lam), &vars, 4, Convention::Direct).unwrap())
        });
    }
}

fn lr(c: &mut Criterion) {
    let x = YoungDiagram::from_rows(&[2, 1]);
    let lam = YoungDiagram::from_rows(&[3, 2, 1]);
    c.bench_function("lr/tableaux", |b| b.iter(|| lr_coeffs(black_box(&x), black_box(&x))));
    c.bench_function("lr/foam", |b| b.iter(|| lr_via_foam(black_box(&x), &x, &lam, 3, 3).unwrap()));
}

fn gram(c: &mut Criterion) {
    c.bench_function("gram/theta(1,1,1)", |b| b.iter(|| gram_matrix(black_box(&[1, 1, 1])).unwrap()));
}

criterion_group!(benches, schur_methods, lr, gram);
criterion_main!(benches);
