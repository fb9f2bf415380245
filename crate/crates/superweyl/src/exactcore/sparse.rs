use std::collections::BTreeMap;

use super::scalar::CycScalar;
use crate::error::{Error, Result};

/// Sparse vector with exact entries; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, CycScalar>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }

    /// The vector with a single entry `value` at `index`.
    pub fn unit(index: usize, value: CycScalar) -> Self {
        let mut v = SparseVec::new();
        v.set(index, value);
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, CycScalar)>>(pairs: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn from_dense(values: &[CycScalar]) -> Self {
        SparseVec::from_pairs(values.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, len: usize, conductor: u32) -> Vec<CycScalar> {
        let mut out = vec![CycScalar::zero(conductor); len];
        for (&i, c) in &self.entries {
            out[i] = c.clone();
        }
        out
    }

    pub fn get(&self, index: usize) -> Option<&CycScalar> {
        self.entries.get(&index)
    }

    pub fn set(&mut self, index: usize, value: CycScalar) {
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn add_at(&mut self, index: usize, value: &CycScalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(e) => {
                *e += value;
                if e.is_zero() {
                    self.entries.remove(&index);
                }
            }
            None => {
                self.entries.insert(index, value.clone());
            }
        }
    }

    /// self += factor * other.
    pub fn add_scaled(&mut self, factor: &CycScalar, other: &SparseVec) {
        if factor.is_zero() {
            return;
        }
        let unit = factor.is_one();
        for (&i, c) in &other.entries {
            if unit {
                self.add_at(i, c);
            } else {
                self.add_at(i, &(factor * c));
            }
        }
    }

    pub fn scaled(&self, factor: &CycScalar) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(&i, c)| (i, factor * c)).collect() }
    }

    pub fn negated(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(&i, c)| (i, -c)).collect() }
    }

    pub fn plus(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (&i, c) in &other.entries {
            out.add_at(i, c);
        }
        out
    }

    pub fn minus(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (&i, c) in &other.entries {
            out.add_at(i, &-c);
        }
        out
    }

    /// Bilinear pairing sum_i self_i * other_i.
    pub fn dot(&self, other: &SparseVec, conductor: u32) -> CycScalar {
        let mut acc = CycScalar::zero(conductor);
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for (i, c) in &small.entries {
            if let Some(d) = large.entries.get(i) {
                acc += &(c * d);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycScalar)> + '_ {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Smallest index with a nonzero entry.
    pub fn leading(&self) -> Option<(usize, &CycScalar)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Re-indexes entries through `map`; entries mapping to `None` are dropped.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, map: F) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in &self.entries {
            if let Some(j) = map(i) {
                out.add_at(j, c);
            }
        }
        out
    }

    pub fn embed(&self, target: u32) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (&i, c) in &self.entries {
            out.set(i, c.embed(target)?);
        }
        Ok(out)
    }

    /// Conductor shared by all entries, `None` for the zero vector.
    pub fn conductor(&self) -> Option<u32> {
        self.entries.values().next().map(|c| c.conductor())
    }

    pub(crate) fn check_conductor(&self, conductor: u32) -> Result<()> {
        for c in self.entries.values() {
            if c.conductor() != conductor {
                return Err(Error::ConductorMismatch(conductor, c.conductor()));
            }
        }
        Ok(())
    }
}

impl FromIterator<(usize, CycScalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, CycScalar)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter)
    }
}

/// Row-major sparse matrix over a single cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        SparseMatrix { rows, cols, conductor, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = SparseMatrix::zero(n, n, conductor);
        for i in 0..n {
            m.data[i].set(i, CycScalar::one(conductor));
        }
        m
    }

    /// Builds a matrix from sparse rows, validating shapes and conductors.
    pub fn from_rows(cols: usize, conductor: u32, rows: Vec<SparseVec>) -> Result<Self> {
        for r in &rows {
            r.check_conductor(conductor)?;
            if let Some(k) = r.max_index() {
                if k >= cols {
                    return Err(Error::ForeignIndex { index: k, size: cols });
                }
            }
        }
        Ok(SparseMatrix { rows: rows.len(), cols, conductor, data: rows })
    }

    /// Builds a matrix from sparse columns.
    pub fn from_columns(rows: usize, conductor: u32, columns: &[SparseVec]) -> Result<Self> {
        let mut m = SparseMatrix::zero(rows, columns.len(), conductor);
        for (j, col) in columns.iter().enumerate() {
            col.check_conductor(conductor)?;
            for (i, c) in col.iter() {
                if i >= rows {
                    return Err(Error::ForeignIndex { index: i, size: rows });
                }
                m.data[i].set(j, c.clone());
            }
        }
        Ok(m)
    }

    pub fn from_dense(conductor: u32, rows: &[Vec<CycScalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged dense matrix".into()));
        }
        SparseMatrix::from_rows(cols, conductor, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_integers(conductor: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let dense: Vec<Vec<CycScalar>> =
            rows.iter().map(|r| r.iter().map(|&x| CycScalar::from_int(conductor, x)).collect()).collect();
        SparseMatrix::from_dense(conductor, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        self.data[i].get(j).cloned().unwrap_or_else(|| CycScalar::zero(self.conductor))
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycScalar) -> Result<()> {
        if value.conductor() != self.conductor {
            return Err(Error::ConductorMismatch(self.conductor, value.conductor()));
        }
        if i >= self.rows || j >= self.cols {
            return Err(Error::ForeignIndex { index: i.max(j), size: self.rows.max(self.cols) });
        }
        self.data[i].set(j, value);
        Ok(())
    }

    pub fn add_at(&mut self, i: usize, j: usize, value: &CycScalar) {
        self.data[i].add_at(j, value);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.data.iter().enumerate().all(|(i, r)| r.indices().all(|j| j == i))
    }

    pub fn diagonal(&self) -> Vec<CycScalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> CycScalar {
        let mut acc = CycScalar::zero(self.conductor);
        for (i, r) in self.data.iter().enumerate() {
            if let Some(c) = r.get(i) {
                acc += c;
            }
        }
        acc
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zero(self.cols, self.rows, self.conductor);
        for (i, r) in self.data.iter().enumerate() {
            for (j, c) in r.iter() {
                t.data[j].set(i, c.clone());
            }
        }
        t
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            if let Some(c) = r.get(j) {
                out.set(i, c.clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec> {
        v.check_conductor(self.conductor)?;
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            out.set(i, r.dot(v, self.conductor));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = SparseMatrix::zero(self.rows, other.cols, self.conductor);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, c) in r.iter() {
                acc.add_scaled(c, &other.data[k]);
            }
            out.data[i] = acc;
        }
        Ok(out)
    }

    fn same_shape(&self, other: &SparseMatrix) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch(self.conductor, other.conductor));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect();
        Ok(self.with_data(data))
    }

    pub fn checked_sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect();
        Ok(self.with_data(data))
    }

    /// self + factor * other.
    pub fn add_scaled(&mut self, factor: &CycScalar, other: &SparseMatrix) -> Result<()> {
        self.same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_scaled(factor, b);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &CycScalar) -> SparseMatrix {
        let data = self.data.iter().map(|r| r.scaled(factor)).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<SparseVec>) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols, conductor: self.conductor, data }
    }

    /// Entries flattened row-major into one vector of length rows*cols.
    pub fn flatten(&self) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            for (j, c) in r.iter() {
                out.set(i * self.cols + j, c.clone());
            }
        }
        out
    }

    pub fn unflatten(rows: usize, cols: usize, conductor: u32, v: &SparseVec) -> SparseMatrix {
        let mut m = SparseMatrix::zero(rows, cols, conductor);
        for (k, c) in v.iter() {
            m.data[k / cols].set(k % cols, c.clone());
        }
        m
    }

    pub fn embed(&self, target: u32) -> Result<SparseMatrix> {
        let data = self.data.iter().map(|r| r.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, conductor: target, data })
    }

    /// Selects a sub-block by row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut pos = vec![None; self.cols];
        for (k, &j) in cols.iter().enumerate() {
            pos[j] = Some(k);
        }
        let data = rows.iter().map(|&i| self.data[i].remap(|j| pos[j])).collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), conductor: self.conductor, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_entries_are_not_stored() {
        let mut v = SparseVec::new();
        v.add_at(3, &CycScalar::from_int(1, 2));
        v.add_at(3, &CycScalar::from_int(1, -2));
        assert!(v.is_zero());
        let m = SparseMatrix::from_integers(1, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn multiplication_and_transpose() {
        let a = SparseMatrix::from_integers(1, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = SparseMatrix::from_integers(1, &[vec![0, 1], vec![1, 0]]).unwrap();
        let ab = a.checked_mul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_integers(1, &[vec![2, 1], vec![4, 3]]).unwrap());
        assert_eq!(a.transpose().get(0, 1), CycScalar::from_int(1, 3));
    }

    #[test]
    fn mixed_conductor_rows_rejected() {
        let rows = vec![SparseVec::unit(0, CycScalar::one(3))];
        assert_eq!(SparseMatrix::from_rows(2, 4, rows), Err(Error::ConductorMismatch(4, 3)));
    }
}
