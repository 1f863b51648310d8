//! Small worked cases for the foam, evaluation, builder and web modules.

use num_bigint::BigInt;
use slnfoam::foamcore::{
    apply_kempe, enumerate_colorings, foam_degree, intersection_euler, kempe_components, monochrome_euler, validate_foam,
    Decoration, FoamError,
};
use slnfoam::foameval::{eval, eval_lincomb, eval_numeric, int_point, FoamLinComb};
use slnfoam::foamzoo::{
    build_gen_theta_closed, build_graph_times_circle, build_relation, build_sphere, build_surface, build_theta,
    closure_family, GenThetaDecorations, RelationId,
};
use slnfoam::moyflag::{
    gram_pairing, graded_rank_theta, lr_via_foam, moy_coloring_count, qbinom, structure_constants, theta_basis,
    MoyGraph,
};
use slnfoam::schur::{SchurCombo, YoungDiagram};
use slnfoam::{Foam, MultiPoly};

fn yd(r: &[u32]) -> YoungDiagram {
    YoungDiagram::from_rows(r)
}

fn one(a: usize) -> SchurCombo {
    SchurCombo::one(a)
}

fn theta11(n: usize) -> Foam {
    build_theta(1, 1, &one(1), &one(1), &one(2), n).unwrap()
}

#[test]
fn theta_validation() {
    let f = theta11(2);
    assert!(validate_foam(&f).is_ok());

    let mut bad = build_theta(1, 1, &one(1), &one(1), &one(2), 3).unwrap();
    bad.facets[2].label = 3;
    assert!(!validate_foam(&bad).is_ok());

    let mut bad = f.clone();
    bad.facets[1].boundary = vec![vec![(0, 0)]];
    assert!(!validate_foam(&bad).is_ok());
}

#[test]
fn degrees() {
    assert_eq!(foam_degree(&theta11(2)), Some(-2));
    assert_eq!(foam_degree(&build_surface(2, 1, &one(2), 4).unwrap()), Some(0));
    let dotted = build_sphere(1, &SchurCombo::single(1, yd(&[1, 1])), 3).unwrap();
    assert_eq!(foam_degree(&dotted), Some(0));
}

#[test]
fn coloring_counts() {
    assert_eq!(enumerate_colorings(&build_sphere(1, &one(1), 3).unwrap()).len(), 3);
    assert_eq!(enumerate_colorings(&theta11(2)).len(), 2);
    for (n, k, c) in [(3, 1, 3), (4, 2, 6), (4, 4, 1)] {
        let f = build_graph_times_circle(&MoyGraph::circle(n, k), None).unwrap();
        assert_eq!(enumerate_colorings(&f).len(), c);
    }
}

#[test]
fn euler_characteristics() {
    let f = build_sphere(1, &one(1), 2).unwrap();
    let c = &enumerate_colorings(&f)[0];
    let absent = if c.has(0, 1) { 2 } else { 1 };
    assert_eq!(monochrome_euler(&f, c, absent).unwrap(), 0);
    assert_eq!(intersection_euler(&f, c, 1, 2).unwrap(), 0);
    // two disks and the thick disk: each monochrome surface is a sphere
    let t = theta11(2);
    let c = &enumerate_colorings(&t)[0];
    assert_eq!(monochrome_euler(&t, c, 1).unwrap(), 2);
    assert_eq!(monochrome_euler(&t, c, 2).unwrap(), 2);
}

#[test]
fn kempe_move_on_theta() {
    let t = theta11(2);
    let cs = enumerate_colorings(&t);
    let comps = kempe_components(&t, &cs[0], 1, 2).unwrap();
    assert_eq!(comps.len(), 1);
    let moved = apply_kempe(&t, &cs[0], 1, 2, 0).unwrap();
    assert_eq!(moved, cs[1]);
    assert_eq!(apply_kempe(&t, &cs[0], 1, 2, 5), Err(FoamError::NoComponent(5)));
}

#[test]
fn evaluations() {
    let dotted = build_theta(1, 1, &one(1), &SchurCombo::single(1, yd(&[1])), &one(2), 2).unwrap();
    assert_eq!(eval(&dotted).unwrap(), MultiPoly::constant(2, -1));
    assert!(eval(&theta11(2)).unwrap().is_zero());
    assert!(eval(&build_sphere(1, &one(1), 2).unwrap()).unwrap().is_zero());
    let x2 = build_sphere(1, &SchurCombo::single(1, yd(&[1, 1])), 3).unwrap();
    assert_eq!(eval(&x2).unwrap(), MultiPoly::constant(3, -1));
    let top = build_sphere(1, &SchurCombo::single(1, yd(&[1])), 2).unwrap();
    assert_eq!(eval(&top).unwrap(), MultiPoly::constant(2, -1));
    for n in 1..=5usize {
        let s = build_sphere(n, &one(n), n).unwrap();
        let want = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        assert_eq!(eval(&s).unwrap(), MultiPoly::constant(n, want));
    }
    assert_eq!(eval(&build_surface(1, 1, &one(1), 3).unwrap()).unwrap(), MultiPoly::constant(3, 3));
}

#[test]
fn linear_combinations() {
    let torus = build_surface(1, 1, &one(1), 2).unwrap();
    let mut l = FoamLinComb::new();
    l.push_int(1, theta11(2));
    l.push_int(-1, theta11(2));
    assert!(eval_lincomb(&l).unwrap().is_zero());
    let mut l = FoamLinComb::new();
    l.push_int(2, torus);
    assert_eq!(eval_lincomb(&l).unwrap(), MultiPoly::constant(2, 4));
}

#[test]
fn numeric_evaluation() {
    let dotted = build_theta(1, 1, &one(1), &SchurCombo::single(1, yd(&[1])), &one(2), 2).unwrap();
    assert_eq!(eval_numeric(&dotted, &int_point(&[5, 2])).unwrap(), int_point(&[-1])[0]);
    let torus = build_surface(1, 1, &one(1), 2).unwrap();
    assert_eq!(eval_numeric(&torus, &int_point(&[9, -4])).unwrap(), int_point(&[2])[0]);
    let sphere = build_sphere(1, &one(1), 2).unwrap();
    assert_eq!(eval_numeric(&sphere, &int_point(&[7, 3])).unwrap(), int_point(&[0])[0]);
}

#[test]
fn theta_sweep_shows_delta_pattern() {
    // (a, b, N) = (1, 2, 3): value is ±1 exactly when β̂ = α
    for alpha in slnfoam::schur::enumerate_box(1, 2) {
        for beta in slnfoam::schur::enumerate_box(2, 1) {
            let da = if alpha.is_empty() { one(1) } else { SchurCombo::single(1, alpha.clone()) };
            let db = if beta.is_empty() { one(2) } else { SchurCombo::single(2, beta.clone()) };
            let v = eval(&build_theta(1, 2, &da, &db, &one(3), 3).unwrap()).unwrap();
            let delta = beta.dual_in(2, 1).unwrap() == alpha;
            assert_eq!(!v.is_zero(), delta, "{alpha:?} {beta:?}");
        }
    }
}

#[test]
fn webs_times_circle() {
    let f = build_graph_times_circle(&MoyGraph::theta(&[1, 1]), None).unwrap();
    assert_eq!(eval(&f).unwrap().as_constant().unwrap(), BigInt::from(2));
    assert_eq!(moy_coloring_count(&MoyGraph::theta(&[1, 1, 1])).unwrap(), BigInt::from(6));
    assert_eq!(moy_coloring_count(&MoyGraph::circle(5, 2)).unwrap(), BigInt::from(10));
}

#[test]
fn generalized_thetas() {
    let s = build_gen_theta_closed(&[3], &GenThetaDecorations::trivial(1)).unwrap();
    assert_eq!(eval(&s).unwrap(), MultiPoly::constant(3, 1));
    let t = build_gen_theta_closed(&[1, 1, 1], &GenThetaDecorations::trivial(3)).unwrap();
    assert!(eval(&t).unwrap().is_zero());
}

#[test]
fn relation_shapes() {
    let neck = build_relation(RelationId::NeckCutting, &[1], 2).unwrap();
    assert_eq!(neck.rhs_terms().len(), 2);
    let digon = build_relation(RelationId::Digon, &[1, 1], 2).unwrap();
    let signs: Vec<i64> = digon.rhs_terms().iter().map(|t| t.coeff).collect();
    assert_eq!(signs.len(), 2);
    assert_eq!(signs[0], -signs[1]);
    assert!(matches!(
        build_relation(RelationId::Square, &[1, 1, 1, 1], 3),
        Err(slnfoam::foamzoo::ZooError::Unavailable(_))
    ));
}

#[test]
fn closure_families() {
    let sphere = build_relation(RelationId::Sphere, &[1], 2).unwrap();
    // the bare closure and π_(1), π_(1,1)
    assert_eq!(closure_family(&sphere, 2).len(), 3);
    let theta = build_relation(RelationId::Theta, &[1, 1], 2).unwrap();
    assert_eq!(closure_family(&theta, 0).len(), 1);
}

#[test]
fn quantum_ranks() {
    assert_eq!(qbinom(2, 1).to_string(), "q + q^-1");
    assert_eq!(graded_rank_theta(&[1, 1], 2).unwrap(), qbinom(2, 1));
    assert_eq!(graded_rank_theta(&[4], 4).unwrap().at_one(), BigInt::from(1));
    assert_eq!(graded_rank_theta(&[1, 2, 1], 4).unwrap().at_one(), BigInt::from(12));
}

#[test]
fn theta_bases_and_pairings() {
    assert_eq!(theta_basis(&[1, 1]).unwrap().len(), 2);
    assert_eq!(theta_basis(&[3]).unwrap().len(), 1);
    assert_eq!(theta_basis(&[1, 1, 1]).unwrap().len(), 6);
    let b = theta_basis(&[1, 1]).unwrap();
    let m = gram_pairing(&[1, 1], &b, &b).unwrap();
    let c = |x: &MultiPoly| x.as_constant();
    let zero = BigInt::from(0);
    assert!(c(&m[0][0]) == Some(zero.clone()) || c(&m[1][1]) == Some(zero));
    for (i, j) in [(0, 1), (1, 0)] {
        let v = c(&m[i][j]).unwrap();
        assert!(v == BigInt::from(1) || v == BigInt::from(-1));
    }
}

#[test]
fn structure_constants_of_the_unit() {
    let e = yd(&[]);
    let sc = structure_constants(&[1, 1, 1], &[e.clone(), e.clone()], &[e.clone(), e.clone()]).unwrap();
    for (idx, v) in sc {
        let want = if idx.iter().all(|d| d.is_empty()) { 1 } else { 0 };
        assert_eq!(v, MultiPoly::constant(3, want), "{idx:?}");
    }
}

#[test]
fn small_lr_coefficients() {
    assert_eq!(lr_via_foam(&yd(&[1]), &yd(&[]), &yd(&[1]), 1, 1).unwrap(), BigInt::from(1));
    assert_eq!(lr_via_foam(&yd(&[1]), &yd(&[1]), &yd(&[2]), 2, 2).unwrap(), BigInt::from(1));
    assert_eq!(lr_via_foam(&yd(&[1]), &yd(&[1]), &yd(&[1, 1]), 2, 2).unwrap(), BigInt::from(1));
    assert!(lr_via_foam(&yd(&[1]), &yd(&[1]), &yd(&[1]), 2, 2).is_err());
}

#[test]
fn decorations_multiply() {
    let x = Decoration::single(1, yd(&[1]));
    let f = build_sphere(1, &one(1), 3).unwrap();
    let g = slnfoam::foamzoo::decorate(&slnfoam::foamzoo::decorate(&f, 0, &x).unwrap(), 0, &x).unwrap();
    assert_eq!(eval(&g).unwrap(), MultiPoly::constant(3, -1));
}
