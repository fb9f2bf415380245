use superweyl::classical::*;
use superweyl::exactcore::CycScalar;
use superweyl::liesuper::{Parity, SuperAlgebra};

fn roots_of(g: &SuperAlgebra) -> RootSystem {
    let h = cartan_subalgebra(g).unwrap();
    root_decomposition(g, &h).unwrap()
}

fn int(g: &SuperAlgebra, x: i64) -> CycScalar {
    CycScalar::from_int(g.conductor(), x)
}

#[test]
fn constructed_families_satisfy_axioms() {
    for g in [build_sl(2, 1), build_sl(3, 2), build_osp(1, 2), build_osp(2, 2), build_osp(3, 2)] {
        let g = g.unwrap();
        assert!(g.check_axioms().passed(), "{}", g.name());
    }
}

#[test]
fn cartan_dimensions() {
    assert_eq!(cartan_subalgebra(&build_sl(2, 1).unwrap()).unwrap().len(), 2);
    assert_eq!(cartan_subalgebra(&build_sl(3, 2).unwrap()).unwrap().len(), 4);
    assert_eq!(cartan_subalgebra(&build_osp(1, 2).unwrap()).unwrap().len(), 1);
}

#[test]
fn root_counts() {
    let rs = roots_of(&build_sl(2, 1).unwrap());
    assert_eq!((rs.count(Parity::Even), rs.count(Parity::Odd)), (2, 4));
    let rs = roots_of(&build_sl(3, 2).unwrap());
    assert_eq!((rs.count(Parity::Even), rs.count(Parity::Odd)), (8, 12));
    let rs = roots_of(&build_osp(1, 2).unwrap());
    assert_eq!((rs.count(Parity::Even), rs.count(Parity::Odd)), (2, 2));
}

#[test]
fn root_spaces_are_eigenspaces() {
    for g in [build_sl(3, 2).unwrap(), build_osp(3, 2).unwrap()] {
        let rs = roots_of(&g);
        let mut total = rs.rank();
        for r in &rs.roots {
            total += r.space.len();
            for (j, h) in rs.cartan.iter().enumerate() {
                for x in &r.space {
                    assert_eq!(g.bracket(h, x).unwrap(), x.scaled(&r.values[j]));
                }
            }
        }
        assert_eq!(total, g.dim());
    }
}

#[test]
fn distinguished_bases() {
    let g = build_sl(2, 1).unwrap();
    let rs = roots_of(&g);
    let b = distinguished_simple_roots(&g, &rs).unwrap();
    assert_eq!(b.simple.len(), 2);
    assert_eq!(rs.roots[b.simple[0]].parity, Parity::Even);
    assert_eq!(rs.roots[b.simple[1]].parity, Parity::Odd);
    // e for eps1 - eps2 is E12 and for eps2 - delta1 is E23.
    assert_eq!(g.label(rs.roots[b.simple[0]].space[0].leading().unwrap().0), "E12");
    assert_eq!(g.label(rs.roots[b.simple[1]].space[0].leading().unwrap().0), "E23");

    let g = build_osp(1, 2).unwrap();
    let rs = roots_of(&g);
    let b = distinguished_simple_roots(&g, &rs).unwrap();
    assert_eq!(b.simple.len(), 1);
    assert!(rs.roots[b.simple[0]].parity.is_odd());

    let g = build_osp(3, 2).unwrap();
    let rs = roots_of(&g);
    let b = distinguished_simple_roots(&g, &rs).unwrap();
    assert_eq!(b.simple.len(), 2);
    assert_eq!(b.odd_simple(&rs.roots).len(), 1);
    for (i, c) in b.coefficients.iter().enumerate() {
        let sign = if b.positive[i] { 1 } else { -1 };
        assert!(c.iter().all(|&x| x * sign >= 0));
    }
}

#[test]
fn triangular_decompositions() {
    for (g, plus) in [(build_osp(1, 2).unwrap(), 2), (build_sl(2, 1).unwrap(), 3)] {
        let rs = roots_of(&g);
        let td = triangular_decomposition(&g, &rs, &rs.base).unwrap();
        assert_eq!(td.n_plus.len(), plus);
        assert_eq!(td.n_minus.len(), plus);
        assert!(td.is_direct_sum(g.dim()));
        for t in &td.chevalley {
            assert_eq!(g.bracket(&t.e, &t.f).unwrap(), t.h);
        }
    }
    for g in [build_sl(3, 2).unwrap(), build_osp(2, 2).unwrap(), build_osp(3, 2).unwrap(), build_osp(4, 2).unwrap()] {
        let rs = roots_of(&g);
        let td = triangular_decomposition(&g, &rs, &rs.base).unwrap();
        assert!(td.is_direct_sum(g.dim()), "{}", g.name());
        for (i, t) in td.chevalley.iter().enumerate() {
            let alpha = rs.evaluate(&rs.roots[t.root].values, &t.h).unwrap();
            assert_eq!(g.bracket(&t.h, &t.e).unwrap(), t.e.scaled(&alpha));
            assert_eq!(td.cartan_matrix[i][i], alpha);
        }
    }
}

#[test]
fn sl21_cartan_matrix() {
    let g = build_sl(2, 1).unwrap();
    let rs = roots_of(&g);
    let td = triangular_decomposition(&g, &rs, &rs.base).unwrap();
    let expected = [[2, -1], [-1, 0]];
    assert!(td.cartan_matrix.len() == 2 && td.cartan_matrix.iter().all(|row| row.len() == 2));
    for (row, expected_row) in td.cartan_matrix.iter().zip(expected) {
        for (entry, value) in row.iter().zip(expected_row) {
            assert_eq!(*entry, int(&g, value));
        }
    }
}

#[test]
fn grading_types() {
    for (g, kind) in [
        (build_sl(2, 1).unwrap(), GradingType::One),
        (build_sl(3, 2).unwrap(), GradingType::One),
        (build_osp(3, 2).unwrap(), GradingType::Two),
        (build_osp(2, 2).unwrap(), GradingType::One),
        (build_osp(1, 2).unwrap(), GradingType::Two),
    ] {
        let rs = roots_of(&g);
        let b = distinguished_simple_roots(&g, &rs).unwrap();
        assert_eq!(z_grading(&rs, &b).unwrap().kind, kind, "{}", g.name());
    }
}

#[test]
fn killing_form_on_cartan_is_nondegenerate() {
    for g in [build_sl(2, 1).unwrap(), build_sl(3, 2).unwrap(), build_osp(1, 2).unwrap(), build_osp(3, 2).unwrap()] {
        let h = cartan_subalgebra(&g).unwrap();
        let rows: Vec<Vec<CycScalar>> =
            h.iter().map(|x| h.iter().map(|y| g.killing_form(x, y).unwrap()).collect()).collect();
        let m = superweyl::exactcore::SparseMatrix::from_dense(g.conductor(), &rows).unwrap();
        assert_eq!(superweyl::exactcore::rank(&m).unwrap(), h.len(), "{}", g.name());
    }
}
