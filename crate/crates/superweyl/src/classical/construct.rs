use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactcore::{kernel, CycScalar, SpanSolver, SparseMatrix, SparseVec};
use crate::liesuper::{matrix_supertrace, BasisElement, Parity, Realization, SuperAlgebra};

/// Parity of a supermatrix on C^{even_dim | *}: block diagonal is even,
/// block off-diagonal is odd.
pub fn supermatrix_parity(m: &SparseMatrix, even_dim: usize) -> Result<Parity> {
    let mut found: Option<Parity> = None;
    for i in 0..m.rows() {
        for (j, _) in m.row(i).iter() {
            let p = Parity::from_bit((i < even_dim) != (j < even_dim));
            match found {
                None => found = Some(p),
                Some(q) if q != p => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
    }
    Ok(found.unwrap_or(Parity::Even))
}

/// Supercommutator XY - (-1)^{|X||Y|} YX.
pub fn supercommutator(x: &SparseMatrix, px: Parity, y: &SparseMatrix, py: Parity) -> Result<SparseMatrix> {
    let xy = x.checked_mul(y)?;
    let yx = y.checked_mul(x)?;
    if px.sign(py) == 1 {
        xy.checked_sub(&yx)
    } else {
        xy.checked_add(&yx)
    }
}

/// The algebra spanned by the given homogeneous supermatrices, which must be
/// independent and closed under the supercommutator.
pub fn from_matrices(
    name: &str,
    conductor: u32,
    even_dim: usize,
    odd_dim: usize,
    basis: Vec<(String, SparseMatrix)>,
    regular: Option<SparseMatrix>,
) -> Result<SuperAlgebra> {
    let parities = basis.iter().map(|(_, m)| supermatrix_parity(m, even_dim)).collect::<Result<Vec<_>>>()?;
    let flat: Vec<SparseVec> = basis.iter().map(|(_, m)| m.flatten()).collect();
    let solver = SpanSolver::from_vectors(conductor, &flat);
    if solver.rank() != basis.len() {
        return Err(Error::Invalid(format!("{name}: basis matrices are dependent")));
    }
    let mut brackets = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let c = supercommutator(&basis[i].1, parities[i], &basis[j].1, parities[j])?;
            if c.is_zero() {
                continue;
            }
            let coords = solver
                .coordinates(&c.flatten())
                .ok_or_else(|| Error::Invalid(format!("{name}: span not closed under bracket")))?;
            brackets.insert((i, j), coords);
        }
    }
    let regular = match regular {
        None => None,
        Some(m) => Some(
            solver
                .coordinates(&m.flatten())
                .ok_or_else(|| Error::Invalid(format!("{name}: regular element outside the algebra")))?,
        ),
    };
    let labels: Vec<BasisElement> =
        basis.iter().zip(&parities).map(|((l, _), &p)| BasisElement::new(l.clone(), p)).collect();
    let realization = Realization { even_dim, odd_dim, matrices: basis.into_iter().map(|(_, m)| m).collect(), regular };
    SuperAlgebra::new(name, conductor, labels, brackets, Some(realization))
}

fn unit(n: usize, i: usize, j: usize) -> SparseMatrix {
    let mut m = SparseMatrix::zero(n, n, 1);
    m.set(i, j, CycScalar::one(1)).expect("in range");
    m
}

fn diagonal(values: &[CycScalar]) -> SparseMatrix {
    let n = values.len();
    let mut m = SparseMatrix::zero(n, n, 1);
    for (i, v) in values.iter().enumerate() {
        m.set(i, i, v.clone()).expect("in range");
    }
    m
}

/// The special linear superalgebra sl(m|n), m != n, as supertraceless
/// matrices. Basis: Cartan elements h1.. then matrix units Eab in row-major
/// order. The stored regular element selects the distinguished positive
/// system eps_1 > ... > eps_m > delta_1 > ... > delta_n.
pub fn build_sl(m: usize, n: usize) -> Result<SuperAlgebra> {
    if m == 0 || n == 0 {
        return Err(Error::UnsupportedFamily(format!("sl({m}|{n}) needs m, n >= 1")));
    }
    if m == n {
        return Err(Error::UnsupportedFamily(format!("sl({m}|{n}) with m = n is out of scope")));
    }
    if m + n > 8 {
        return Err(Error::UnsupportedFamily(format!("sl({m}|{n}) exceeds size 8")));
    }
    let size = m + n;
    let mut basis = Vec::new();
    for i in 0..size - 1 {
        let mut h = unit(size, i, i);
        let sign = if i + 1 == m { 1 } else { -1 };
        h.set(i + 1, i + 1, CycScalar::from_int(1, sign))?;
        basis.push((format!("h{}", i + 1), h));
    }
    for a in 0..size {
        for b in 0..size {
            if a != b {
                basis.push((format!("E{}{}", a + 1, b + 1), unit(size, a, b)));
            }
        }
    }
    let values: Vec<CycScalar> = (0..size).map(|i| CycScalar::from_int(1, (size - i) as i64)).collect();
    let raw = diagonal(&values);
    let shift = matrix_supertrace(&raw, m).checked_div(&CycScalar::from_int(1, m as i64 - n as i64))?;
    let regular = raw.checked_sub(&SparseMatrix::identity(size, 1).scaled(&shift))?;
    from_matrices(&format!("sl({m}|{n})"), 1, m, n, basis, Some(regular))
}

/// Gram matrix of the even-symmetric, odd-symplectic form: antidiagonal on
/// each block, with the symplectic block +1 above and -1 below its middle.
pub fn osp_form(m: usize, two_n: usize) -> SparseMatrix {
    let size = m + two_n;
    let mut b = SparseMatrix::zero(size, size, 1);
    for i in 0..m {
        b.set(i, m - 1 - i, CycScalar::one(1)).expect("in range");
    }
    for j in 0..two_n {
        let sign = if j < two_n / 2 { 1 } else { -1 };
        b.set(m + j, m + two_n - 1 - j, CycScalar::from_int(1, sign)).expect("in range");
    }
    b
}

/// The orthosymplectic superalgebra osp(m|2n): supermatrices X with
/// B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0 for the form of [`osp_form`].
/// Basis: diagonal elements h1.. first, then the remaining even solutions,
/// then the odd ones, each labelled by the matrix position of its free entry.
pub fn build_osp(m: usize, two_n: usize) -> Result<SuperAlgebra> {
    if !two_n.is_multiple_of(2) {
        return Err(Error::UnsupportedFamily(format!("osp({m}|{two_n}) needs an even symplectic size")));
    }
    if m == 0 || two_n == 0 || m > 5 || two_n > 4 {
        return Err(Error::UnsupportedFamily(format!("osp({m}|{two_n}) outside 1 <= m <= 5, 2 <= 2n <= 4")));
    }
    let size = m + two_n;
    let form = osp_form(m, two_n);
    let is_odd = |p: usize| p >= m;
    let mut diagonal_part = Vec::new();
    let mut even_part = Vec::new();
    let mut odd_part = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        // Unknowns: the matrix entries allowed by the parity.
        let slots: Vec<(usize, usize)> = (0..size)
            .flat_map(|r| (0..size).map(move |c| (r, c)))
            .filter(|&(r, c)| Parity::from_bit(is_odd(r) != is_odd(c)) == parity)
            .collect();
        let index: BTreeMap<(usize, usize), usize> = slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut rows = Vec::new();
        for u in 0..size {
            for v in 0..size {
                // sum_p X[p][u] B[p][v] + sign * sum_q B[u][q] X[q][v]
                let sign = parity.sign(Parity::from_bit(is_odd(u)));
                let mut row = SparseVec::new();
                for p in 0..size {
                    let bpv = form.get(p, v);
                    if !bpv.is_zero() {
                        if let Some(&k) = index.get(&(p, u)) {
                            row.add_at(k, &bpv);
                        }
                    }
                    let buq = form.get(u, p);
                    if !buq.is_zero() {
                        if let Some(&k) = index.get(&(p, v)) {
                            row.add_at(k, &buq.scale_rational(&crate::exactcore::rat(sign)));
                        }
                    }
                }
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
        let system = SparseMatrix::from_rows(slots.len(), 1, rows)?;
        for v in kernel(&system)? {
            let mut mat = SparseMatrix::zero(size, size, 1);
            for (k, c) in v.iter() {
                mat.set(slots[k].0, slots[k].1, c.clone())?;
            }
            // The free entry is the largest index of the kernel vector.
            let (r, c) = slots[v.max_index().expect("nonzero kernel vector")];
            if mat.is_diagonal() {
                diagonal_part.push(mat);
            } else if parity == Parity::Even {
                even_part.push((format!("X{}{}", r + 1, c + 1), mat));
            } else {
                odd_part.push((format!("X{}{}", r + 1, c + 1), mat));
            }
        }
    }
    let mut basis: Vec<(String, SparseMatrix)> =
        diagonal_part.into_iter().enumerate().map(|(i, h)| (format!("h{}", i + 1), h)).collect();
    basis.extend(even_part);
    basis.extend(odd_part);
    let regular = osp_regular(m, two_n);
    from_matrices(&format!("osp({m}|{two_n})"), 1, m, two_n, basis, Some(regular))
}

/// Diagonal regular element giving the distinguished positive system:
/// epsilon-first for osp(2|2n), delta-first otherwise.
fn osp_regular(m: usize, two_n: usize) -> SparseMatrix {
    let k = m / 2;
    let n = two_n / 2;
    let (eps_scale, delta_scale) = if m == 2 { (n as i64 + 1, 1) } else { (1, k as i64 + 1) };
    let mut values = vec![0i64; m + two_n];
    for i in 0..k {
        let v = (k - i) as i64 * eps_scale;
        values[i] = v;
        values[m - 1 - i] = -v;
    }
    for j in 0..n {
        let v = (n - j) as i64 * delta_scale;
        values[m + j] = v;
        values[m + two_n - 1 - j] = -v;
    }
    let values: Vec<CycScalar> = values.into_iter().map(|v| CycScalar::from_int(1, v)).collect();
    diagonal(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl_dimensions() {
        let g = build_sl(2, 1).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.super_dim(), (4, 4));
        assert_eq!(build_sl(3, 2).unwrap().dim(), 24);
        assert!(matches!(build_sl(2, 2), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn osp_dimensions() {
        assert_eq!(build_osp(1, 2).unwrap().super_dim(), (3, 2));
        assert_eq!(build_osp(3, 2).unwrap().super_dim(), (6, 6));
        assert_eq!(build_osp(2, 2).unwrap().dim(), 8);
        assert!(build_osp(2, 3).is_err());
    }

    #[test]
    fn osp_matrices_preserve_the_form() {
        for (m, two_n) in [(1, 2), (2, 2), (3, 2), (4, 2), (1, 4)] {
            let g = build_osp(m, two_n).unwrap();
            let formula = m * (m - 1) / 2 + (two_n / 2) * (two_n + 1) + m * two_n;
            assert_eq!(g.dim(), formula, "osp({m}|{two_n})");
        }
    }
}
