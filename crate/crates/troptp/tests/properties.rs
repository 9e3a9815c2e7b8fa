//! Randomized algebraic properties of the tropical semiring, the
//! parametrization maps, and the nonarchimedean valuation.

use proptest::prelude::*;

use troptp::jacobi::{canonical_word, evaluate_word, weight_sequence};
use troptp::network::{build_canonical, WeightMatrix};
use troptp::param::{gen_weights, phi, psi, GenMode};
use troptp::perm::{minor_sign, optimal_permutations, permanent, TropSign};
use troptp::puiseux::{k_positive, k_val, PuiseuxPoly};
use troptp::scalar::{Rat, TropValue};
use troptp::TropMatrix;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| troptp::scalar::ratq(n, d))
}

fn arb_trop() -> impl Strategy<Value = TropValue> {
    prop_oneof![
        1 => Just(TropValue::NegInf),
        6 => arb_rat().prop_map(TropValue::Finite),
    ]
}

fn arb_matrix(n: usize) -> impl Strategy<Value = TropMatrix> {
    proptest::collection::vec(arb_trop(), n * n)
        .prop_map(move |v| TropMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn arb_finite_matrix(n: usize) -> impl Strategy<Value = TropMatrix> {
    proptest::collection::vec(arb_rat(), n * n)
        .prop_map(move |v| TropMatrix::from_fn(n, n, |i, j| TropValue::Finite(v[i * n + j].clone())))
}

fn arb_weights(n: usize) -> impl Strategy<Value = WeightMatrix> {
    proptest::collection::vec(arb_rat(), n * n)
        .prop_map(move |v| WeightMatrix::new(n, v).expect("square"))
}

proptest! {
    #[test]
    fn semiring_laws(a in arb_trop(), b in arb_trop(), c in arb_trop()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        // distributivity and neutral elements
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&TropValue::NegInf), a.clone());
        prop_assert_eq!(a.times(&TropValue::unit()), a.clone());
        prop_assert_eq!(a.times(&TropValue::NegInf), TropValue::NegInf);
    }

    #[test]
    fn matmul_is_associative(a in arb_matrix(3), b in arb_matrix(3), c in arb_matrix(3)) {
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn permanent_is_attained_by_optimal_permutations(a in arb_matrix(4)) {
        let per = permanent(&a).unwrap();
        let opt = optimal_permutations(&a).unwrap();
        prop_assert_eq!(opt.is_empty(), per == TropValue::NegInf);
        for p in &opt {
            let mut acc = TropValue::unit();
            for (i, &j) in p.images().iter().enumerate() {
                acc = acc.times(a.get(i, j));
            }
            prop_assert_eq!(acc, per.clone());
        }
    }

    #[test]
    fn permanent_shifts_with_row_constant(a in arb_finite_matrix(4), c in arb_rat()) {
        let shifted = TropMatrix::from_fn(4, 4, |i, j| {
            if i == 0 {
                a.get(i, j).times(&TropValue::Finite(c.clone()))
            } else {
                a.get(i, j).clone()
            }
        });
        let expect = permanent(&a).unwrap().times(&TropValue::Finite(c.clone()));
        prop_assert_eq!(permanent(&shifted).unwrap(), expect);
    }

    #[test]
    fn minor_sign_is_transpose_invariant(a in arb_matrix(4)) {
        let idx: Vec<usize> = (0..4).collect();
        let direct = minor_sign(&a, &idx, &idx).unwrap();
        let transposed = minor_sign(&a.transpose(), &idx, &idx).unwrap();
        prop_assert_eq!(direct, transposed);
    }

    #[test]
    fn phi_psi_identities(w in arb_weights(4), a in arb_finite_matrix(4)) {
        prop_assert_eq!(phi(&psi(&w)).unwrap(), w);
        prop_assert_eq!(psi(&phi(&a).unwrap()), a);
    }

    #[test]
    fn word_evaluation_is_the_transfer_matrix(w in arb_weights(3)) {
        let lhs = evaluate_word(&canonical_word(3), &weight_sequence(&w)).unwrap();
        let rhs = build_canonical(&w).transfer_matrix().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn valuation_is_a_morphism(e1 in arb_rat(), e2 in arb_rat(), c1 in 1i64..20, c2 in 1i64..20) {
        let f = PuiseuxPoly::monomial(troptp::scalar::rat(c1), e1).add(&PuiseuxPoly::one());
        let g = PuiseuxPoly::monomial(troptp::scalar::rat(c2), e2);
        prop_assert_eq!(k_val(&f.mul(&g)), k_val(&f).times(&k_val(&g)));
        // positives never cancel, so val(f + g) = max(val f, val g)
        prop_assert!(k_positive(&f).unwrap() && k_positive(&g).unwrap());
        prop_assert_eq!(k_val(&f.add(&g)), k_val(&f).plus(&k_val(&g)));
    }

    #[test]
    fn rank_deficient_products_are_sign_singular(
        entries_g in proptest::collection::vec(arb_rat(), 8),
        entries_h in proptest::collection::vec(arb_rat(), 8),
    ) {
        // 4x2 times 2x4: the full 4x4 minor must be sign-singular
        let g = TropMatrix::from_fn(4, 2, |i, j| TropValue::Finite(entries_g[i * 2 + j].clone()));
        let h = TropMatrix::from_fn(2, 4, |i, j| TropValue::Finite(entries_h[i * 4 + j].clone()));
        let f = g.matmul(&h).unwrap();
        let idx: Vec<usize> = (0..4).collect();
        prop_assert_eq!(minor_sign(&f, &idx, &idx).unwrap(), TropSign::SignSingular);
    }

    #[test]
    fn document_round_trip(a in arb_matrix(3)) {
        let text = troptp::io::render_trop(&a);
        match troptp::io::parse_document(&text).unwrap() {
            troptp::io::Document::Trop(b) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "wrong document kind"),
        }
    }

    #[test]
    fn strict_generator_transfer_is_tp(seed in 0u64..500, n in 1usize..=5) {
        let w = gen_weights(n, GenMode::Strict, seed);
        let a = build_canonical(&w).transfer_matrix().unwrap();
        prop_assert_eq!(a.clone(), psi(&w));
        prop_assert!(troptp::positivity::is_tp(&a).unwrap());
    }
}
