use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, SparseMatrix, SparseVec};
use crate::liesuper::{Element, SuperAlgebra};

/// A finite-dimensional representation given by one action matrix per basis
/// element of the acting algebra.
#[derive(Clone, Debug)]
pub struct RepModule {
    pub algebra: SuperAlgebra,
    pub dim: usize,
    /// matrices[i] is the action of basis element i, columns are images.
    pub matrices: Vec<SparseMatrix>,
}

impl RepModule {
    pub fn new(algebra: SuperAlgebra, dim: usize, matrices: Vec<SparseMatrix>) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for {} generators",
                matrices.len(),
                algebra.dim()
            )));
        }
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("action matrix is not {dim} x {dim}")));
        }
        Ok(RepModule { algebra, dim, matrices })
    }

    pub fn conductor(&self) -> u32 {
        self.algebra.conductor()
    }

    /// Action matrix of an algebra element.
    pub fn matrix_of(&self, x: &Element) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.dim, self.dim, self.conductor());
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.matrices[i]).expect("matching shapes");
        }
        out
    }

    /// Image of a vector under an algebra element.
    pub fn act(&self, x: &Element, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.matrices[i].mul_vec(v).expect("matching shapes"));
        }
        out
    }

    /// Image of a vector under basis element i.
    pub fn act_basis(&self, i: usize, v: &SparseVec) -> SparseVec {
        self.matrices[i].mul_vec(v).expect("matching shapes")
    }

    /// Pairs (i, j) of basis elements with rho([x_i, x_j]) different from the
    /// supercommutator of rho(x_i) and rho(x_j), checked on every pair.
    pub fn bracket_failures(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.algebra.dim();
        let mut failures = Vec::new();
        for i in 0..n {
            for j in i..n {
                let sign = CycScalar::from_int(self.conductor(), self.algebra.parity(i).sign(self.algebra.parity(j)));
                let ab = self.matrices[i].checked_mul(&self.matrices[j])?;
                let ba = self.matrices[j].checked_mul(&self.matrices[i])?;
                let commutator = ab.checked_sub(&ba.scaled(&sign))?;
                if commutator != self.matrix_of(self.algebra.bracket_basis(i, j)) {
                    failures.push((i, j));
                }
            }
        }
        Ok(failures)
    }

    /// The submodule generated by `vectors`, as an echelon spanning set.
    pub fn submodule(&self, vectors: &[SparseVec]) -> crate::exactcore::Echelon {
        let mut span = crate::exactcore::Echelon::new();
        let mut queue: Vec<SparseVec> = vectors.iter().filter(|v| span.insert(v)).cloned().collect();
        while let Some(v) = queue.pop() {
            for m in &self.matrices {
                let image = m.mul_vec(&v).expect("matching shapes");
                if span.insert(&image) {
                    queue.push(image);
                }
            }
        }
        span
    }

    /// The quotient by a submodule given by its echelon basis, on the
    /// non-pivot coordinates.
    pub fn quotient(&self, submodule: &crate::exactcore::Echelon) -> Result<(RepModule, Vec<usize>)> {
        let pivots: std::collections::BTreeSet<usize> = submodule.pivots().collect();
        let kept: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let position = |i: usize| kept.binary_search(&i).ok();
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let columns: Vec<SparseVec> =
                    kept.iter().map(|&j| submodule.reduce(&m.column(j)).remap(position)).collect();
                SparseMatrix::from_columns(kept.len(), self.conductor(), &columns)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((RepModule::new(self.algebra.clone(), kept.len(), matrices)?, kept))
    }
}
