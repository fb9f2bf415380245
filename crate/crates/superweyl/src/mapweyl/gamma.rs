use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, SparseVec};
use crate::liesuper::{BasisElement, SuperAlgebra};

/// A finite-dimensional commutative unital algebra with a cyclic action
/// sigma(a_j) = z^{component_j} a_j on its basis and a compatible grading by
/// nonnegative degrees (the exponent of t for truncated polynomials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaAlgebra {
    pub labels: Vec<String>,
    /// products[i][j] = a_i a_j in the basis.
    pub products: Vec<Vec<SparseVec>>,
    /// Eigenvalue exponent of each basis element, in 0..order.
    pub components: Vec<u32>,
    pub degrees: Vec<u32>,
    pub order: u32,
    pub conductor: u32,
    pub unit: usize,
}

/// C[t]/(t^n) with sigma(t) = z t for a primitive m-th root z.
pub fn build_truncated_algebra(n: usize, m: u32) -> Result<GammaAlgebra> {
    if n == 0 || n > 6 {
        return Err(Error::Invalid(format!("truncation degree {n} outside 1..=6")));
    }
    if m == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    crate::exactcore::check_conductor(m)?;
    let conductor = m;
    let labels = (0..n).map(monomial_label).collect();
    let products = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i + j < n { SparseVec::unit(i + j, CycScalar::one(conductor)) } else { SparseVec::new() })
                .collect()
        })
        .collect();
    Ok(GammaAlgebra {
        labels,
        products,
        components: (0..n as u32).map(|j| j % m).collect(),
        degrees: (0..n as u32).collect(),
        order: m,
        conductor,
        unit: 0,
    })
}

fn monomial_label(j: usize) -> String {
    match j {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{j}"),
    }
}

impl GammaAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Basis indices of the component A_s, s taken mod the order.
    pub fn component(&self, s: i64) -> Vec<usize> {
        let s = s.rem_euclid(self.order as i64) as u32;
        (0..self.dim()).filter(|&j| self.components[j] == s).collect()
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.products[i][j]);
            }
        }
        out
    }

    /// The action sigma on an element.
    pub fn act(&self, x: &SparseVec) -> SparseVec {
        x.iter().map(|(j, c)| (j, c * &CycScalar::zeta_pow(self.conductor, self.components[j] as i64))).collect()
    }

    /// Commutativity, associativity, the unit, and A_s A_t in A_{s+t}.
    pub fn check(&self) -> Result<()> {
        let n = self.dim();
        let unit = SparseVec::unit(self.unit, CycScalar::one(self.conductor));
        if self.components[self.unit] != 0 {
            return Err(Error::Invalid("unit is not invariant".into()));
        }
        for i in 0..n {
            let ei = SparseVec::unit(i, CycScalar::one(self.conductor));
            if self.multiply(&unit, &ei) != ei {
                return Err(Error::Invalid(format!("unit fails on {}", self.labels[i])));
            }
            for j in 0..n {
                if self.products[i][j] != self.products[j][i] {
                    return Err(Error::Invalid(format!("{} and {} do not commute", self.labels[i], self.labels[j])));
                }
                let s = (self.components[i] + self.components[j]) % self.order;
                if self.products[i][j].indices().any(|k| self.components[k] != s) {
                    return Err(Error::Invalid("product leaves its graded component".into()));
                }
                for k in 0..n {
                    let ek = SparseVec::unit(k, CycScalar::one(self.conductor));
                    let left = self.multiply(&self.products[i][j], &ek);
                    let right = self.multiply(&ei, &self.products[j][k]);
                    if left != right {
                        return Err(Error::Invalid("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest-degree basis element generating the invariant part A_0 beyond
    /// the unit (t^m for truncated polynomials), if any.
    pub fn invariant_generator(&self) -> Option<usize> {
        self.component(0).into_iter().filter(|&j| j != self.unit).min_by_key(|&j| self.degrees[j])
    }

    /// The invariant subalgebra A_0 with the trivial action.
    pub fn invariant_part(&self) -> GammaAlgebra {
        let kept = self.component(0);
        let position = |j: usize| kept.iter().position(|&k| k == j);
        GammaAlgebra {
            labels: kept.iter().map(|&j| self.labels[j].clone()).collect(),
            products: kept
                .iter()
                .map(|&i| kept.iter().map(|&j| self.products[i][j].remap(position)).collect())
                .collect(),
            components: vec![0; kept.len()],
            degrees: kept.iter().map(|&j| self.degrees[j]).collect(),
            order: 1,
            conductor: self.conductor,
            unit: position(self.unit).expect("unit is invariant"),
        }
    }

    /// Basis index holding the p-th power of basis element j, when the power
    /// is again a basis element up to a nonzero scalar; `None` if it vanishes.
    pub fn power(&self, j: usize, p: u32) -> Option<usize> {
        let mut acc = SparseVec::unit(self.unit, CycScalar::one(self.conductor));
        let base = SparseVec::unit(j, CycScalar::one(self.conductor));
        for _ in 0..p {
            acc = self.multiply(&acc, &base);
        }
        (acc.len() == 1).then(|| acc.leading().expect("nonzero").0)
    }
}

/// The map superalgebra L (x) A with [u (x) f, v (x) g] = [u, v] (x) fg. Basis
/// element i * dim A + j is (basis i of L) (x) (basis j of A). Stored pairs
/// (i, k) with i <= k of L cover every ordered pair of tensor indices.
pub fn map_superalgebra(algebra: &SuperAlgebra, coefficients: &GammaAlgebra) -> Result<SuperAlgebra> {
    let conductor = coefficients.conductor.max(algebra.conductor());
    if !conductor.is_multiple_of(algebra.conductor()) || !conductor.is_multiple_of(coefficients.conductor) {
        return Err(Error::ConductorMismatch(algebra.conductor(), coefficients.conductor));
    }
    let algebra = algebra.embed(conductor)?;
    let na = coefficients.dim();
    let index = |i: usize, j: usize| i * na + j;
    let mut basis = Vec::with_capacity(algebra.dim() * na);
    for i in 0..algebra.dim() {
        for j in 0..na {
            basis.push(BasisElement::new(tensor_label(algebra.label(i), &coefficients.labels[j]), algebra.parity(i)));
        }
    }
    let mut brackets = BTreeMap::new();
    for ((i, k), v) in algebra.stored_brackets() {
        for j in 0..na {
            for l in 0..na {
                let (left, right) = (index(*i, j), index(*k, l));
                if left > right {
                    continue;
                }
                let mut out = SparseVec::new();
                for (c, x) in v.iter() {
                    for (d, y) in coefficients.products[j][l].iter() {
                        out.add_at(index(c, d), &(x * &y.embed(conductor)?));
                    }
                }
                if !out.is_zero() {
                    brackets.insert((left, right), out);
                }
            }
        }
    }
    let name = format!("{}*{}", algebra.name(), coefficients.describe());
    SuperAlgebra::new(name, conductor, basis, brackets, None)
}

pub(crate) fn tensor_label(x: &str, f: &str) -> String {
    format!("{x}*{f}")
}

impl GammaAlgebra {
    /// Short name such as "trunc4" or "trunc4/2".
    pub fn describe(&self) -> String {
        if self.order == 1 {
            format!("trunc{}", self.dim())
        } else {
            format!("trunc{}/{}", self.dim(), self.order)
        }
    }
}
