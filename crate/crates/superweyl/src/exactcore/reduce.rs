use std::collections::BTreeMap;

use super::scalar::CycScalar;
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::Result;

/// Result of exact Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    /// Nonzero rows of the reduced echelon form, ordered by pivot column.
    pub rref: Vec<SparseVec>,
    /// Pivot column of each row of `rref`.
    pub pivots: Vec<usize>,
    /// Basis of the right kernel, one vector per free column.
    pub kernel: Vec<SparseVec>,
    pub rank: usize,
}

/// Reduced row echelon form, row-space basis, kernel basis and rank.
///
/// Pivots are chosen at the leftmost available column and, among rows
/// reaching that column, at the smallest row index.
pub fn row_reduce(matrix: &SparseMatrix) -> Result<RowReduction> {
    let conductor = matrix.conductor();
    for r in matrix.row_vectors() {
        r.check_conductor(conductor)?;
    }
    let mut active: Vec<(usize, SparseVec)> =
        matrix.row_vectors().iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, r)| (i, r.clone())).collect();
    let mut done: Vec<SparseVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    while !active.is_empty() {
        let (pos, col) = active
            .iter()
            .enumerate()
            .map(|(k, (idx, r))| (k, r.leading().expect("active rows are nonzero").0, *idx))
            .min_by_key(|&(_, col, idx)| (col, idx))
            .map(|(k, col, _)| (k, col))
            .expect("nonempty");
        let (_, mut row) = active.swap_remove(pos);
        let inv = row.get(col).expect("pivot present").inv()?;
        row = row.scaled(&inv);
        for (_, other) in active.iter_mut() {
            if let Some(c) = other.get(col).cloned() {
                other.add_scaled(&-c, &row);
            }
        }
        active.retain(|(_, r)| !r.is_zero());
        for other in done.iter_mut() {
            if let Some(c) = other.get(col).cloned() {
                other.add_scaled(&-c, &row);
            }
        }
        done.push(row);
        pivots.push(col);
    }
    let kernel = kernel_from_rref(&done, &pivots, matrix.cols(), conductor);
    Ok(RowReduction { rank: done.len(), rref: done, pivots, kernel })
}

fn kernel_from_rref(rref: &[SparseVec], pivots: &[usize], cols: usize, conductor: u32) -> Vec<SparseVec> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = SparseVec::unit(free, CycScalar::one(conductor));
        for (row, &p) in rref.iter().zip(pivots) {
            if let Some(c) = row.get(free) {
                v.set(p, -c);
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Basis of the right kernel of `matrix`.
pub fn kernel(matrix: &SparseMatrix) -> Result<Vec<SparseVec>> {
    Ok(row_reduce(matrix)?.kernel)
}

/// Rank of `matrix`.
pub fn rank(matrix: &SparseMatrix) -> Result<usize> {
    Ok(row_reduce(matrix)?.rank)
}

/// Incrementally maintained reduced echelon basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values()
    }

    /// Remainder of `v` after reduction by the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<usize> = out.indices().filter(|i| self.rows.contains_key(i)).collect();
        for p in hits {
            if let Some(c) = out.get(p).cloned() {
                out.add_scaled(&-c, &self.rows[&p]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((p, c)) => {
                let row = r.scaled(&c.inv().expect("nonzero leading entry"));
                for other in self.rows.values_mut() {
                    if let Some(c) = other.get(p).cloned() {
                        other.add_scaled(&-c, &row);
                    }
                }
                self.rows.insert(p, row);
                true
            }
        }
    }
}

/// Span of a list of vectors that can express members in terms of the list.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    conductor: u32,
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    count: usize,
}

impl SpanSolver {
    pub fn new(conductor: u32) -> Self {
        SpanSolver { conductor, rows: BTreeMap::new(), count: 0 }
    }

    pub fn from_vectors(conductor: u32, vectors: &[SparseVec]) -> Self {
        let mut s = SpanSolver::new(conductor);
        for v in vectors {
            s.push(v);
        }
        s
    }

    /// Number of vectors pushed so far.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let hits: Vec<usize> = rem.indices().filter(|i| self.rows.contains_key(i)).collect();
        for p in hits {
            if let Some(c) = rem.get(p).cloned() {
                let (row, row_combo) = &self.rows[&p];
                rem.add_scaled(&-&c, row);
                combo.add_scaled(&c, row_combo);
            }
        }
        (rem, combo)
    }

    /// Appends the next vector; returns whether it was independent of the earlier ones.
    pub fn push(&mut self, v: &SparseVec) -> bool {
        let index = self.count;
        self.count += 1;
        let (rem, combo) = self.reduce_tracked(v);
        let Some((p, c)) = rem.leading() else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading entry");
        let mut own = combo.negated();
        own.set(index, CycScalar::one(self.conductor));
        let row = rem.scaled(&inv);
        let row_combo = own.scaled(&inv);
        for (other, other_combo) in self.rows.values_mut() {
            if let Some(c) = other.get(p).cloned() {
                other.add_scaled(&-&c, &row);
                other_combo.add_scaled(&-&c, &row_combo);
            }
        }
        self.rows.insert(p, (row, row_combo));
        true
    }

    /// Coefficients expressing `v` as a combination of the pushed vectors.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.reduce_tracked(v);
        rem.is_zero().then_some(combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_tracked(v).0.is_zero()
    }
}

/// Solves `matrix * x = rhs`, returning one solution if any exists.
pub fn solve(matrix: &SparseMatrix, rhs: &SparseVec) -> Result<Option<SparseVec>> {
    let cols: Vec<SparseVec> = (0..matrix.cols()).map(|j| matrix.column(j)).collect();
    let solver = SpanSolver::from_vectors(matrix.conductor(), &cols);
    Ok(solver.coordinates(rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> CycScalar {
        CycScalar::from_int(1, x)
    }

    #[test]
    fn identity_has_full_rank() {
        let r = row_reduce(&SparseMatrix::identity(3, 1)).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let r = row_reduce(&SparseMatrix::zero(2, 4, 1)).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 4);
    }

    #[test]
    fn rank_one_example() {
        let m = SparseMatrix::from_integers(1, &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = row_reduce(&m).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel, vec![SparseVec::from_pairs([(0, int(-2)), (1, int(1))])]);
        assert!(m.mul_vec(&r.kernel[0]).unwrap().is_zero());
    }

    #[test]
    fn span_solver_coordinates() {
        let a = SparseVec::from_pairs([(0, int(1)), (1, int(1))]);
        let b = SparseVec::from_pairs([(1, int(1)), (2, int(1))]);
        let s = SpanSolver::from_vectors(1, &[a.clone(), a.scaled(&int(2)), b.clone()]);
        assert_eq!(s.rank(), 2);
        let target = a.scaled(&int(3)).minus(&b);
        let c = s.coordinates(&target).unwrap();
        let mut rebuilt = SparseVec::new();
        for (i, coef) in c.iter() {
            rebuilt.add_scaled(coef, [&a, &a.scaled(&int(2)), &b][i]);
        }
        assert_eq!(rebuilt, target);
        assert!(s.coordinates(&SparseVec::unit(0, int(1))).is_none());
    }

    #[test]
    fn echelon_matches_row_reduce() {
        let m = SparseMatrix::from_integers(1, &[vec![0, 2, 4], vec![1, 1, 1], vec![1, 2, 3]]).unwrap();
        let mut e = Echelon::new();
        for r in m.row_vectors() {
            e.insert(r);
        }
        let r = row_reduce(&m).unwrap();
        assert_eq!(e.basis().cloned().collect::<Vec<_>>(), r.rref);
    }
}
