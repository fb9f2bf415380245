use proptest::prelude::*;

use superweyl::classical::{build_osp, build_sl};
use superweyl::exactcore::{kernel, rank, ratio, CycScalar, SparseMatrix};
use superweyl::liesuper::SuperAlgebra;
use superweyl::mapweyl::{
    build_global_weyl, build_truncated_algebra, equivariant_map_subalgebra, highest_weight_algebra, map_superalgebra,
    normal_form_by_rewriting, Envelope, Folding,
};

const CONDUCTORS: [u32; 5] = [1, 3, 4, 5, 8];

/// A scalar sum_k c_k z^k with small rational c_k.
fn scalar(conductor: u32) -> impl Strategy<Value = CycScalar> {
    prop::collection::vec((-6i64..=6, 1i64..=4), conductor as usize).prop_map(move |terms| {
        terms.into_iter().enumerate().fold(CycScalar::zero(conductor), |acc, (k, (p, q))| {
            let term = &CycScalar::from_rational(conductor, ratio(p, q)) * &CycScalar::zeta_pow(conductor, k as i64);
            &acc + &term
        })
    })
}

fn scalar_triple() -> impl Strategy<Value = (CycScalar, CycScalar, CycScalar)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| (scalar(m), scalar(m), scalar(m)))
}

fn integer_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=6)
        .prop_flat_map(|(rows, cols)| prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows))
}

fn small_algebras() -> Vec<SuperAlgebra> {
    vec![build_osp(1, 2).unwrap(), build_sl(2, 1).unwrap(), build_osp(2, 2).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws((a, b, c) in scalar_triple()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip((a, _, _) in scalar_triple()) {
        prop_assert_eq!(CycScalar::parse(a.conductor(), &a.to_exact_string()).unwrap(), a.clone());
        prop_assert_eq!(CycScalar::parse(a.conductor(), &a.to_compact_string()).unwrap(), a);
    }

    #[test]
    fn rank_ignores_row_order(rows in integer_matrix(), seed in any::<u64>()) {
        let mut permuted = rows.clone();
        let n = permuted.len();
        for i in (1..n).rev() {
            permuted.swap(i, (seed as usize).wrapping_add(i * 7919) % (i + 1));
        }
        let m = SparseMatrix::from_integers(1, &rows).unwrap();
        let p = SparseMatrix::from_integers(1, &permuted).unwrap();
        prop_assert_eq!(rank(&m).unwrap(), rank(&p).unwrap());
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in integer_matrix()) {
        let m = SparseMatrix::from_integers(1, &rows).unwrap();
        let basis = kernel(&m).unwrap();
        for v in &basis {
            prop_assert!(!v.is_zero());
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        prop_assert_eq!(rank(&m).unwrap() + basis.len(), m.cols());
    }

    #[test]
    fn normal_ordering_is_confluent(which in 0usize..3, word in prop::collection::vec(0usize..64, 0..=6)) {
        let g = &small_algebras()[which];
        let word: Vec<usize> = word.into_iter().map(|x| x % g.dim()).collect();
        let mut env = Envelope::new(g.clone(), 8);
        prop_assert_eq!(env.normal_form(&word).unwrap(), normal_form_by_rewriting(g, &word, 8).unwrap());
    }

    #[test]
    fn algebra_text_round_trip(which in 0usize..3, n in 1usize..=3) {
        let g = &small_algebras()[which];
        for algebra in [g.clone(), map_superalgebra(g, &build_truncated_algebra(n, 1).unwrap()).unwrap()] {
            let text = algebra.to_text();
            let reread = SuperAlgebra::from_text(&text).unwrap();
            prop_assert!(reread.same_structure(&algebra));
            prop_assert_eq!(reread.to_text(), text);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn weyl_modules_are_representations(n in 1usize..=2, lambda in 0i64..=2, sl2 in any::<bool>()) {
        let g = if sl2 { superweyl::mapweyl::osp12_even_sl2().unwrap() } else { build_osp(1, 2).unwrap() };
        let folding = Folding::trivial(&g).unwrap();
        let eq = equivariant_map_subalgebra(&folding, &build_truncated_algebra(n, 1).unwrap()).unwrap();
        let w = build_global_weyl(&eq, &[lambda], 12).unwrap();
        prop_assert!(w.certificate.converged);
        prop_assert!(w.module.bracket_failures().unwrap().is_empty());
        prop_assert!(w.basis.iter().all(|b| b.depth.iter().all(|&d| d >= 0)));
        prop_assert_eq!(highest_weight_algebra(&w).unwrap().dim(), w.highest_weight_space().len());
    }
}
