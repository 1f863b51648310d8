use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slnfoam::foamcore::{foam_degree, foam_from_json, foam_to_json};
use slnfoam::foameval::{eval, int_point};
use slnfoam::foamzoo::{check_lemmas, disjoint_union, random_zoo_foam};
use slnfoam::schur::{enumerate_box, lr_coeffs, schur_with, Convention, SchurMethod, VarSet, YoungDiagram};
use slnfoam::MultiPoly;

const NV: usize = 3;

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, NV), -4i64..=4), 0..5)
        .prop_map(|ts| MultiPoly::from_terms(NV, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn diagram(cols: u32, rows: usize) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(0..=cols, 0..=rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.retain(|&x| x > 0);
        YoungDiagram::from_rows(&v)
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn linear_division_undoes_multiplication(p in poly(), i in 0..NV, j in 0..NV) {
        prop_assume!(i != j);
        prop_assert_eq!(p.mul_linear(i, j).exact_div_linear(i, j).unwrap(), p);
    }

    #[test]
    fn text_round_trip(p in poly()) {
        prop_assert_eq!(MultiPoly::parse(NV, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn specialization_is_a_ring_map(p in poly(), q in poly(), pt in prop::collection::vec(-5i64..=5, NV)) {
        let x = int_point(&pt);
        let prod = (&p * &q).specialize(&x).unwrap();
        prop_assert_eq!(prod, p.specialize(&x).unwrap() * q.specialize(&x).unwrap());
    }

    #[test]
    fn swap_is_an_involution(p in poly(), i in 0..NV, j in 0..NV) {
        prop_assert_eq!(p.swap_vars(i, j).swap_vars(i, j), p);
    }

    #[test]
    fn box_dual_is_an_involution(a in 0usize..4, b in 0usize..4, d in diagram(3, 3)) {
        prop_assume!(d.fits(a, b));
        let h = d.dual_in(a, b).unwrap();
        prop_assert!(h.fits(b, a));
        prop_assert_eq!(h.size() + d.size(), a * b);
        prop_assert_eq!(h.dual_in(b, a).unwrap(), d);
    }

    #[test]
    fn lr_is_symmetric_and_conjugation_invariant(x in diagram(3, 3), y in diagram(3, 3)) {
        let xy = lr_coeffs(&x, &y);
        prop_assert_eq!(&xy, &lr_coeffs(&y, &x));
        let conj = lr_coeffs(&x.conjugate(), &y.conjugate());
        prop_assert_eq!(xy.len(), conj.len());
        for (l, c) in &xy {
            prop_assert_eq!(conj.get(&l.conjugate()), Some(c));
        }
    }

    #[test]
    fn schur_methods_agree(d in diagram(4, 3), m in 1usize..5) {
        let vars = VarSet::new((0..m).collect());
        let r: Vec<_> = [SchurMethod::Bialternant, SchurMethod::Tableaux, SchurMethod::JacobiTrudi]
            .into_iter()
            .map(|meth| schur_with(meth, &d, &vars, m, Convention::Conjugate).ok())
            .collect();
        prop_assert_eq!(&r[0], &r[1]);
        prop_assert_eq!(&r[1], &r[2]);
        if let Some(p) = &r[0] {
            prop_assert!(p.is_symmetric());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_foams_are_symmetric_of_the_right_degree(seed in any::<u64>(), n in 1usize..=4) {
        let z = random_zoo_foam(&mut ChaCha8Rng::seed_from_u64(seed), n).unwrap();
        let v = eval(&z.foam).unwrap();
        prop_assert!(v.is_symmetric());
        prop_assert!(v.is_homogeneous_of(foam_degree(&z.foam).unwrap()), "{}: {}", z.name, v);
    }

    #[test]
    fn foam_json_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let z = random_zoo_foam(&mut ChaCha8Rng::seed_from_u64(seed), n).unwrap();
        let back = foam_from_json(&foam_to_json(&z.foam)).unwrap();
        prop_assert_eq!(eval(&back).unwrap(), eval(&z.foam).unwrap());
    }

    #[test]
    fn disjoint_union_multiplies(s1 in any::<u64>(), s2 in any::<u64>(), n in 1usize..=3) {
        let f = random_zoo_foam(&mut ChaCha8Rng::seed_from_u64(s1), n).unwrap().foam;
        let g = random_zoo_foam(&mut ChaCha8Rng::seed_from_u64(s2), n).unwrap().foam;
        let u = disjoint_union(&f, &g).unwrap();
        prop_assert_eq!(eval(&u).unwrap(), &eval(&f).unwrap() * &eval(&g).unwrap());
    }

    #[test]
    fn structure_lemmas_hold_on_random_foams(seed in any::<u64>(), n in 1usize..=3) {
        let z = random_zoo_foam(&mut ChaCha8Rng::seed_from_u64(seed), n).unwrap();
        for (l, t) in check_lemmas(&z.foam).unwrap() {
            prop_assert!(t.failures.is_empty(), "{} on {}: {:?}", l, z.name, t.failures);
        }
    }
}

#[test]
fn box_enumeration_matches_binomials() {
    // |T(a, b)| = C(a + b, a)
    for a in 0..4usize {
        for b in 0..4usize {
            let c = (1..=a).fold(1usize, |acc, i| acc * (b + i) / i);
            assert_eq!(enumerate_box(a, b).len(), c);
        }
    }
}
