use superweyl::classical::{build_osp, build_sl};
use superweyl::exactcore::{ratio, CycScalar, SparseMatrix, SparseVec};
use superweyl::liesuper::{Parity, SuperAlgebra};
use superweyl::mapweyl::*;
use superweyl::Error;

fn eq_map(g: &SuperAlgebra, perm: &str, n: usize, m: u32) -> EqMapAlgebra {
    let folding = Folding::from_permutation(g, perm).unwrap();
    equivariant_map_subalgebra(&folding, &build_truncated_algebra(n, m).unwrap()).unwrap()
}

fn weyl(g: &SuperAlgebra, perm: &str, n: usize, m: u32, lambda: &[i64], cap: usize) -> WeylModule {
    build_global_weyl(&eq_map(g, perm, n, m), lambda, cap).unwrap()
}

fn q(p: i64, r: i64) -> CycScalar {
    CycScalar::from_rational(1, ratio(p, r))
}

fn even_positive_roots(w: &WeylModule) -> Vec<usize> {
    let f = &w.folding;
    (0..f.roots.len()).filter(|&i| f.base.positive[i] && f.roots.roots[i].parity == Parity::Even).collect()
}

fn apply_monomial(w: &WeylModule, word: &[usize], v: &SparseVec) -> SparseVec {
    word.iter().rev().fold(v.clone(), |acc, &x| w.module.act_basis(x, &acc))
}

#[test]
fn truncated_algebra_components() {
    let a = build_truncated_algebra(4, 2).unwrap();
    a.check().unwrap();
    assert_eq!(a.component(0), vec![0, 2]);
    assert_eq!(a.component(1), vec![1, 3]);
    assert_eq!(a.invariant_generator(), Some(2));
    assert_eq!(a.describe(), "trunc4/2");
    assert_eq!(a.invariant_part().labels, vec!["1", "t^2"]);
}

#[test]
fn map_algebra_dimensions_and_axioms() {
    let g = build_sl(2, 1).unwrap();
    let l = map_superalgebra(&g, &build_truncated_algebra(2, 1).unwrap()).unwrap();
    assert_eq!(l.dim(), 16);
    assert!(l.check_axioms().passed());
    let l = map_superalgebra(&build_osp(1, 2).unwrap(), &build_truncated_algebra(3, 1).unwrap()).unwrap();
    assert_eq!(l.dim(), 15);
    assert!(l.check_axioms().passed());
}

#[test]
fn equivariant_dimensions() {
    let osp12 = build_osp(1, 2).unwrap();
    let eq = eq_map(&osp12, "id", 2, 1);
    assert_eq!(eq.dim(), 10);
    assert!(eq.algebra.check_axioms().passed());
    let osp22 = build_osp(2, 2).unwrap();
    // 5 fixed directions on {1} and 3 twisted ones on {t}.
    let eq = eq_map(&osp22, "flip", 2, 2);
    assert_eq!(eq.dim(), 8);
    assert!(eq.algebra.check_axioms().passed());
    let eq = eq_map(&osp22, "flip", 3, 2);
    assert_eq!(eq.dim(), 5 * 2 + 3);
    assert!(eq.algebra.check_axioms().passed());
}

#[test]
fn exchange_property_for_the_trivial_group() {
    for g in [build_osp(1, 2).unwrap(), build_sl(2, 1).unwrap()] {
        let a = build_truncated_algebra(3, 1).unwrap();
        let eq = eq_map(&g, "id", 3, 1);
        let full = map_superalgebra(&g, &a).unwrap();
        assert_eq!(eq.dim(), full.dim());
        for i in 0..eq.dim() {
            for j in 0..eq.dim() {
                let lhs = full.bracket(&eq.embedding[i], &eq.embedding[j]).unwrap();
                let mut rhs = SparseVec::new();
                for (k, c) in eq.algebra.bracket_basis(i, j).iter() {
                    rhs.add_scaled(c, &eq.embedding[k]);
                }
                assert_eq!(lhs, rhs, "{} {}", eq.algebra.label(i), eq.algebra.label(j));
            }
        }
        let images = SparseMatrix::from_columns(full.dim(), full.conductor(), &eq.embedding).unwrap();
        assert_eq!(superweyl::exactcore::rank(&images).unwrap(), full.dim());
    }
}

#[test]
fn normal_ordering_examples() {
    let g = build_osp(1, 2).unwrap();
    let mut env = Envelope::new(g.clone(), 8);
    let ordered = vec![0, 0, 1, 2];
    assert!(env.is_normal(&ordered));
    assert_eq!(env.normal_form(&ordered).unwrap(), EnvElement::monomial(ordered.clone(), g.one()));
    for word in [vec![4, 0], vec![3, 3], vec![4, 3, 2, 1, 0], vec![1, 1, 0, 4], vec![4, 4, 0, 0]] {
        assert_eq!(env.normal_form(&word).unwrap(), normal_form_by_rewriting(&g, &word, 8).unwrap());
    }
    // An odd element squares to half its self-bracket.
    let square = env.normal_form(&[3, 3]).unwrap();
    let mut expected = EnvElement::zero();
    for (k, c) in g.bracket_basis(3, 3).iter() {
        expected.add_term(vec![k], &c.scale_rational(&ratio(1, 2)));
    }
    assert_eq!(square, expected);
    assert!(matches!(env.normal_form(&[0; 9]), Err(Error::CapExceeded { .. })));
}

fn garland_setting(n: usize, m: u32) -> GarlandSetting {
    GarlandSetting::new(&osp12_even_sl2().unwrap(), &build_truncated_algebra(n, m).unwrap(), 8).unwrap()
}

#[test]
fn garland_series_low_orders() {
    let mut s = garland_setting(4, 1);
    for a in ["1", "t"] {
        let ai = s.locate(a).unwrap();
        let a2 = s.coefficients.power(ai, 2).unwrap();
        let h_a = s.index(1, ai);
        let h_a2 = s.index(1, a2);
        assert_eq!(garland_series(&mut s, a, 0).unwrap(), EnvElement::one(1));
        assert_eq!(garland_series(&mut s, a, 1).unwrap(), EnvElement::monomial(vec![h_a], q(-1, 1)));
        let mut p2 = EnvElement::monomial(vec![h_a, h_a], q(1, 2));
        p2.add_term(vec![h_a2], &q(-1, 2));
        assert_eq!(garland_series(&mut s, a, 2).unwrap(), p2, "a = {a}");
    }
    assert!(garland_series(&mut s, "t", 9).is_err());
}

#[test]
fn garland_first_identity_residuals() {
    let mut s = garland_setting(4, 1);
    let (f, e) = (s.index(0, 0), s.index(2, 0));
    let report = check_garland(&mut s, "1", 1, true).unwrap();
    assert!(report.holds);
    assert_eq!(report.residual, EnvElement::monomial(vec![f, f, e], q(1, 2)));

    let mut s = garland_setting(2, 1);
    let (f, e_t) = (s.index(0, 0), s.index(2, 1));
    let report = check_garland(&mut s, "t", 1, true).unwrap();
    assert!(report.holds);
    assert_eq!(report.residual, EnvElement::monomial(vec![f, f, e_t], q(1, 2)));

    let plain = check_garland(&mut s, "1", 1, false).unwrap();
    assert!(!plain.holds);
    let (h, raising) = (s.index(1, 0), s.index(2, 0));
    assert!(plain.residual.terms().any(|(m, _)| m.contains(&f) && m.contains(&h) && m.iter().all(|&x| x < raising)));
}

#[test]
fn garland_identities_up_to_three() {
    for (n, m, labels) in [(4, 1, vec!["1", "t"]), (3, 1, vec!["1", "t"]), (4, 2, vec!["1", "t^2"])] {
        let mut s = garland_setting(n, m);
        for a in labels {
            for r in 1..=3 {
                assert!(check_garland(&mut s, a, r, true).unwrap().holds, "N={n} m={m} a={a} r={r}");
            }
        }
    }
    let mut s = garland_setting(4, 1);
    assert!(check_garland(&mut s, "1", 4, true).is_err());
}

/// The combination applied to the generating vector of a Weyl module over
/// sl2 (x) A must vanish, since e (x) A kills that vector.
#[test]
fn garland_combination_kills_highest_weight_vectors() {
    let sl2 = osp12_even_sl2().unwrap();
    let w = weyl(&sl2, "id", 3, 1, &[2], 12);
    let mut s = garland_setting(3, 1);
    let setting_labels = s.envelope.labels();
    let module_labels = w.labels();
    let translate: Vec<usize> = setting_labels
        .iter()
        .map(|l| module_labels.iter().position(|x| x == l).unwrap_or_else(|| panic!("missing {l}")))
        .collect();
    let top = w.highest_weight_vector();
    for a in ["1", "t"] {
        for r in 1..=3 {
            for divided in [true, false] {
                let report = check_garland(&mut s, a, r, divided).unwrap();
                let mut image = SparseVec::new();
                for (m, c) in report.residual.terms() {
                    let word: Vec<usize> = m.iter().map(|&x| translate[x]).collect();
                    image.add_scaled(c, &apply_monomial(&w, &word, &top));
                }
                if divided {
                    assert!(image.is_zero(), "a={a} r={r}");
                } else if r == 1 {
                    assert!(!image.is_zero(), "plain powers should leave a multiple of f w");
                }
            }
        }
    }
}

#[test]
fn zero_weight_gives_the_trivial_module() {
    let cases = [
        (build_osp(1, 2).unwrap(), "id", 1, 1, vec![0]),
        (build_osp(1, 2).unwrap(), "id", 2, 1, vec![0]),
        (osp12_even_sl2().unwrap(), "id", 2, 1, vec![0]),
        (build_osp(3, 2).unwrap(), "id", 1, 1, vec![0, 0]),
        (build_osp(2, 2).unwrap(), "flip", 1, 2, vec![0]),
    ];
    for (g, perm, n, m, lambda) in cases {
        let w = weyl(&g, perm, n, m, &lambda, 12);
        assert!(w.certificate.converged);
        assert_eq!(w.dim(), 1, "{}", g.name());
        assert_eq!(w.character().into_iter().collect::<Vec<_>>(), vec![(vec![0; lambda.len()], 1)]);
        assert_eq!(highest_weight_algebra(&w).unwrap().dim(), 1);
    }
}

#[test]
fn isotropic_odd_roots_give_kac_modules_at_zero() {
    // For sl(2|1) the two odd lowering directions survive at weight zero.
    let w = weyl(&build_sl(2, 1).unwrap(), "id", 1, 1, &[0, 0], 12);
    assert!(w.certificate.converged);
    assert_eq!(w.dim(), 4);
}

#[test]
fn osp12_over_scalars_has_odd_dimensions() {
    let g = build_osp(1, 2).unwrap();
    let folding = Folding::trivial(&g).unwrap();
    for k in 0..=4i64 {
        let w = weyl(&g, "id", 1, 1, &[k], 16);
        let vbar = build_vbar(&folding, &[k], 16).unwrap();
        assert_eq!(w.dim() as i64, 2 * k + 1);
        assert_eq!(vbar.dim() as i64, 2 * k + 1);
        assert_eq!(w.character(), vbar.character());
    }
}

#[test]
fn osp32_over_scalars_matches_vbar() {
    let g = build_osp(3, 2).unwrap();
    let folding = Folding::trivial(&g).unwrap();
    for (lambda, dim) in [([0, 0], 1), ([-1, 0], 5), ([-2, 0], 12), ([-2, 2], 12), ([-3, 0], 20), ([-3, 2], 36)] {
        let w = weyl(&g, "id", 1, 1, &lambda, 24);
        let vbar = build_vbar(&folding, &lambda, 24).unwrap();
        assert!(w.certificate.converged && vbar.certificate.converged, "{lambda:?}");
        assert_eq!((w.dim(), vbar.dim()), (dim, dim), "{lambda:?}");
        assert_eq!(w.character(), vbar.character(), "{lambda:?}");
    }
}

#[test]
fn map_algebra_weyl_dimensions() {
    let osp12 = build_osp(1, 2).unwrap();
    assert_eq!(weyl(&osp12, "id", 2, 1, &[1], 12).dim(), 6);
    assert_eq!(weyl(&osp12, "id", 2, 1, &[2], 12).dim(), 19);
    let sl2 = osp12_even_sl2().unwrap();
    // sl2 (x) C[t]/t^2 at weight 1 is two copies of the natural module.
    assert_eq!(weyl(&sl2, "id", 2, 1, &[1], 12).dim(), 4);
}

#[test]
fn converged_modules_are_representations_with_the_right_weights() {
    let cases = [
        (build_osp(1, 2).unwrap(), "id", 2, 1, vec![2]),
        (osp12_even_sl2().unwrap(), "id", 3, 1, vec![2]),
        (build_osp(2, 2).unwrap(), "flip", 1, 2, vec![2]),
        (build_osp(3, 2).unwrap(), "id", 1, 1, vec![-2, 2]),
        (build_sl(2, 1).unwrap(), "id", 1, 1, vec![2, 3]),
    ];
    for (g, perm, n, m, lambda) in cases {
        let w = weyl(&g, perm, n, m, &lambda, 20);
        assert!(w.certificate.converged && w.certificate.closure_verified);
        assert!(w.module.bracket_failures().unwrap().is_empty(), "{}", g.name());
        assert!(w.basis.iter().all(|b| b.depth.iter().all(|&d| d >= 0)));
        for (root, _, holds) in w.verify_root_powers().unwrap() {
            assert!(holds, "{} root {root}", g.name());
        }
        assert_eq!(highest_weight_algebra(&w).unwrap().dim(), w.highest_weight_space().len());
    }
}

#[test]
fn non_convergence_is_reported() {
    let w = weyl(&build_sl(2, 1).unwrap(), "id", 2, 1, &[1, 0], 6);
    assert!(!w.certificate.converged);
    assert!(!w.certificate.closure_verified);
    assert!(matches!(highest_weight_algebra(&w), Err(Error::NotConverged(_))));
    assert!(matches!(filtration_stabilization(&w, 6), Err(Error::NotConverged(_))));
}

#[test]
fn invalid_weights_are_rejected() {
    let eq = eq_map(&build_osp(3, 2).unwrap(), "id", 1, 1);
    assert!(matches!(build_global_weyl(&eq, &[1, 0], 12), Err(Error::InvalidWeight(_))));
    assert!(matches!(build_global_weyl(&eq, &[-1, 2], 12), Err(Error::InvalidWeight(_))));
    let eq = eq_map(&build_osp(1, 2).unwrap(), "id", 1, 1);
    assert!(matches!(build_global_weyl(&eq, &[-1], 12), Err(Error::InvalidWeight(_))));
    assert!(build_global_weyl(&eq, &[1, 1], 12).is_err());
}

#[test]
fn highest_weight_algebra_structure() {
    let sl2 = osp12_even_sl2().unwrap();
    let w = weyl(&sl2, "id", 2, 1, &[1], 12);
    let a = highest_weight_algebra(&w).unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(a.dim(), w.highest_weight_space().len());
    assert!(a.is_commutative() && a.is_associative() && a.is_unital());
    assert_eq!(a.labels, vec!["1", "[h*t]"]);
    let w = weyl(&build_osp(3, 2).unwrap(), "id", 1, 1, &[-2, 2], 20);
    assert_eq!(highest_weight_algebra(&w).unwrap().dim(), 1);
}

#[test]
fn weyl_functor_examples() {
    let sl2 = osp12_even_sl2().unwrap();
    let w = weyl(&sl2, "id", 2, 1, &[1], 12);
    let a = highest_weight_algebra(&w).unwrap();
    let regular = weyl_functor_apply(&w, &a, &a.regular_module()).unwrap();
    assert_eq!(regular.dim(), w.dim());
    assert_eq!(regular.character, w.character());
    assert!(regular.module.bracket_failures().unwrap().is_empty());

    // The one-dimensional quotient where h (x) t acts by zero gives the
    // natural sl2 module.
    let point = vec![SparseMatrix::identity(1, 1), SparseMatrix::zero(1, 1, 1)];
    let local = weyl_functor_apply(&w, &a, &point).unwrap();
    assert_eq!(local.dim(), 2);
    assert!(local.dim() <= w.dim());
    assert!(local.module.bracket_failures().unwrap().is_empty());

    let bad = vec![SparseMatrix::identity(1, 1), SparseMatrix::identity(1, 1)];
    assert!(weyl_functor_apply(&w, &a, &bad).is_err());

    let w0 = weyl(&sl2, "id", 2, 1, &[0], 12);
    let a0 = highest_weight_algebra(&w0).unwrap();
    let trivial = weyl_functor_apply(&w0, &a0, &[SparseMatrix::identity(1, 1)]).unwrap();
    assert_eq!(trivial.dim(), 1);
    assert!(trivial.module.matrices.iter().all(|m| m.is_zero()));
}

#[test]
fn loop_vector_reductions() {
    let sl2 = osp12_even_sl2().unwrap();
    let eq = eq_map(&sl2, "id", 2, 1);
    let w = build_global_weyl(&eq, &[1], 12).unwrap();
    let a = highest_weight_algebra(&w).unwrap();
    let root = even_positive_roots(&w)[0];
    assert!(check_first_loop_identity(&eq, &w, root).unwrap());
    let ht = a.labels.iter().position(|l| l == "[h*t]").unwrap();
    let one = a.labels.iter().position(|l| l == "1").unwrap();
    let reduction = reduce_loop_vector(&eq, &w, &a, root, 1).unwrap();
    assert_eq!(reduction.bound, 1);
    assert_eq!(reduction.coefficients, Some(vec![SparseVec::unit(ht, q(1, 1))]));
    let trivial = reduce_loop_vector(&eq, &w, &a, root, 0).unwrap();
    assert_eq!(trivial.coefficients, Some(vec![SparseVec::unit(one, q(1, 1))]));

    let w0 = build_global_weyl(&eq, &[0], 12).unwrap();
    let a0 = highest_weight_algebra(&w0).unwrap();
    let zero = reduce_loop_vector(&eq, &w0, &a0, root, 1).unwrap();
    assert!(zero.target.is_zero());
    assert_eq!(zero.coefficients, Some(vec![]));

    let osp12 = build_osp(1, 2).unwrap();
    let eq = eq_map(&osp12, "id", 2, 1);
    let w = build_global_weyl(&eq, &[1], 12).unwrap();
    let root = even_positive_roots(&w)[0];
    assert!(check_first_loop_identity(&eq, &w, root).unwrap());
}

#[test]
fn filtrations_stabilize_at_the_module() {
    let sl2 = osp12_even_sl2().unwrap();
    let w0 = weyl(&sl2, "id", 2, 1, &[0], 12);
    let f = filtration_stabilization(&w0, 12).unwrap();
    assert_eq!((f.dims.clone(), f.stable_from, f.certified), (vec![1], 0, true));
    for w in [weyl(&sl2, "id", 3, 1, &[2], 12), weyl(&build_osp(3, 2).unwrap(), "id", 1, 1, &[-2, 2], 20)] {
        let f = filtration_stabilization(&w, 12).unwrap();
        assert!(f.certified);
        assert!(f.dims.windows(2).all(|p| p[0] <= p[1]));
        assert_eq!(*f.dims.last().unwrap(), w.dim());
    }
}

#[test]
fn universal_surjections() {
    let sl2 = osp12_even_sl2().unwrap();
    let w = weyl(&sl2, "id", 3, 1, &[2], 12);
    let verdict = check_universal_surjection(&w, &identity_candidate(&w)).unwrap();
    assert!(verdict.holds());
    assert_eq!(verdict.kernel_dim, 0);
    for seed in 0..3 {
        let candidate = random_quotient(&w, seed, 50).unwrap();
        assert!(candidate.dim < w.dim());
        let verdict = check_universal_surjection(&w, &candidate).unwrap();
        assert!(verdict.holds());
        assert_eq!(verdict.kernel_dim, w.dim() - candidate.dim);
    }
    let mut lowered = identity_candidate(&w);
    lowered.vector = SparseVec::unit(w.dim() - 1, q(1, 1));
    assert!(check_universal_surjection(&w, &lowered).is_err());

    let g = build_osp(3, 2).unwrap();
    let folding = Folding::trivial(&g).unwrap();
    let w = weyl(&g, "id", 1, 1, &[-2, 2], 20);
    let vbar = build_vbar(&folding, &[-2, 2], 20).unwrap();
    let verdict = check_universal_surjection(&w, &evaluation_candidate(&w, &vbar).unwrap()).unwrap();
    assert!(verdict.holds());
    assert_eq!(verdict.kernel_dim, 0);
}

#[test]
fn cap_defaults_and_certificate_text() {
    assert_eq!(DEFAULT_CAP, 8);
    assert_eq!(CAP_ENV, "SUPERWEYL_CAP");
    let w = weyl(&build_osp(1, 2).unwrap(), "id", 1, 1, &[1], 8);
    assert_eq!(w.certificate.to_string(), "cap 8\nreached 4\nconverged true\nclosure_verified true\n");
    assert_eq!(w.character_text(), "[1] : 1\n[0] : 1\n[-1] : 1\n");
}
