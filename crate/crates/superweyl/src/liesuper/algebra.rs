use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, SparseMatrix, SparseVec};

/// Sparse coefficient vector over the basis of an ambient algebra.
pub type Element = SparseVec;

/// Z/2 degree of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    /// The Koszul sign (-1)^{|a||b|}.
    pub fn sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Parity of a product of homogeneous elements.
impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != other.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One basis vector of a superalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub parity: Parity,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, parity: Parity) -> Self {
        BasisElement { label: label.into(), parity }
    }
}

/// Every basis vector as a square supermatrix acting on C^{even_dim | odd_dim}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub even_dim: usize,
    pub odd_dim: usize,
    pub matrices: Vec<SparseMatrix>,
    /// A regular element of the diagonal Cartan whose positive roots form the
    /// preferred positive system.
    pub regular: Option<Element>,
}

impl Realization {
    pub fn size(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    /// Matrix of a general element.
    pub fn matrix_of(&self, x: &Element, conductor: u32) -> SparseMatrix {
        let n = self.size();
        let mut out = SparseMatrix::zero(n, n, conductor);
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.matrices[i]).expect("realization shapes agree");
        }
        out
    }
}

/// A finite-dimensional Lie superalgebra given by structure constants on an
/// ordered homogeneous basis. Brackets are stored for pairs i <= j and the
/// swapped pair is reconstructed by the skew-supersymmetry sign.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    conductor: u32,
    basis: Vec<BasisElement>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
    table: Vec<Vec<SparseVec>>,
    realization: Option<Realization>,
    killing: OnceLock<SparseMatrix>,
}

impl SuperAlgebra {
    /// Builds an algebra from its upper-triangular bracket table. Shapes and
    /// conductors are validated; the axioms are not (see `check_axioms`).
    pub fn new(
        name: impl Into<String>,
        conductor: u32,
        basis: Vec<BasisElement>,
        brackets: BTreeMap<(usize, usize), SparseVec>,
        realization: Option<Realization>,
    ) -> Result<Self> {
        let dim = basis.len();
        crate::exactcore::check_conductor(conductor)?;
        let mut stored = BTreeMap::new();
        let mut table = vec![vec![SparseVec::new(); dim]; dim];
        for ((i, j), v) in brackets {
            if i > j {
                return Err(Error::Invalid(format!("bracket pair ({i}, {j}) must have i <= j")));
            }
            for k in [i, j].into_iter().chain(v.indices()) {
                if k >= dim {
                    return Err(Error::ForeignIndex { index: k, size: dim });
                }
            }
            v.check_conductor(conductor)?;
            if v.is_zero() {
                continue;
            }
            let sign = -basis[i].parity.sign(basis[j].parity);
            table[j][i] = v.scaled(&CycScalar::from_int(conductor, sign));
            table[i][j] = v.clone();
            stored.insert((i, j), v);
        }
        if let Some(r) = &realization {
            if r.matrices.len() != dim {
                return Err(Error::Dimension(format!(
                    "realization has {} matrices for dimension {dim}",
                    r.matrices.len()
                )));
            }
            for m in &r.matrices {
                if m.rows() != r.size() || m.cols() != r.size() {
                    return Err(Error::Dimension("realization matrix of wrong size".into()));
                }
                if m.conductor() != conductor {
                    return Err(Error::ConductorMismatch(conductor, m.conductor()));
                }
            }
        }
        Ok(SuperAlgebra {
            name: name.into(),
            conductor,
            basis,
            brackets: stored,
            table,
            realization,
            killing: OnceLock::new(),
        })
    }

    /// The algebra with every bracket zero.
    pub fn abelian(name: impl Into<String>, conductor: u32, basis: Vec<BasisElement>) -> Result<Self> {
        SuperAlgebra::new(name, conductor, basis, BTreeMap::new(), None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The same algebra with new basis labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.basis.len() {
            return Err(Error::Dimension(format!("{} labels for dimension {}", labels.len(), self.basis.len())));
        }
        for (b, l) in self.basis.iter_mut().zip(labels) {
            b.label = l;
        }
        Ok(self)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Dimensions of the even and odd parts.
    pub fn super_dim(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|b| b.parity.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn stored_brackets(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn with_realization(mut self, realization: Option<Realization>) -> Self {
        self.realization = realization;
        self
    }

    pub fn one(&self) -> CycScalar {
        CycScalar::one(self.conductor)
    }

    pub fn scalar(&self, n: i64) -> CycScalar {
        CycScalar::from_int(self.conductor, n)
    }

    /// The basis vector with index `i`.
    pub fn basis_vector(&self, i: usize) -> Element {
        SparseVec::unit(i, self.one())
    }

    /// Bracket of two basis vectors.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn check_element(&self, x: &Element) -> Result<()> {
        if let Some(k) = x.max_index() {
            if k >= self.dim() {
                return Err(Error::ForeignIndex { index: k, size: self.dim() });
            }
        }
        x.check_conductor(self.conductor)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Element, y: &Element) -> Element {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let v = &self.table[i][j];
                if !v.is_zero() {
                    out.add_scaled(&(a * b), v);
                }
            }
        }
        out
    }

    /// Parity of a homogeneous element; zero counts as even.
    pub fn parity_of(&self, x: &Element) -> Result<Parity> {
        self.check_element(x)?;
        let mut found: Option<Parity> = None;
        for i in x.indices() {
            let p = self.parity(i);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    /// Splits an element into its even and odd parts.
    pub fn homogeneous_parts(&self, x: &Element) -> (Element, Element) {
        let mut even = SparseVec::new();
        let mut odd = SparseVec::new();
        for (i, c) in x.iter() {
            if self.parity(i).is_odd() {
                odd.set(i, c.clone());
            } else {
                even.set(i, c.clone());
            }
        }
        (even, odd)
    }

    /// Matrix of y -> [x, y] in the basis order.
    pub fn ad(&self, x: &Element) -> Result<SparseMatrix> {
        self.check_element(x)?;
        let n = self.dim();
        let mut m = SparseMatrix::zero(n, n, self.conductor);
        for (i, a) in x.iter() {
            for j in 0..n {
                for (k, c) in self.table[i][j].iter() {
                    m.add_at(k, j, &(a * c));
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> SparseMatrix {
        self.ad(&self.basis_vector(i)).expect("basis index in range")
    }

    /// Sum of even diagonal entries minus odd diagonal entries, for an
    /// operator on the algebra.
    pub fn supertrace(&self, m: &SparseMatrix) -> Result<CycScalar> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "operator is {}x{}, algebra has dimension {}",
                m.rows(),
                m.cols(),
                self.dim()
            )));
        }
        if m.conductor() != self.conductor {
            return Err(Error::ConductorMismatch(self.conductor, m.conductor()));
        }
        let mut acc = CycScalar::zero(self.conductor);
        for i in 0..self.dim() {
            if let Some(c) = m.row(i).get(i) {
                if self.parity(i).is_odd() {
                    acc -= c;
                } else {
                    acc += c;
                }
            }
        }
        Ok(acc)
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_gram(&self) -> &SparseMatrix {
        self.killing.get_or_init(|| {
            let n = self.dim();
            let mut gram = SparseMatrix::zero(n, n, self.conductor);
            for i in 0..n {
                for j in 0..n {
                    // str(ad_i ad_j) = sum_k sign_k sum_l c_{il}^k c_{jk}^l
                    let mut acc = CycScalar::zero(self.conductor);
                    for k in 0..n {
                        for (l, cjk) in self.table[j][k].iter() {
                            if let Some(cil) = self.table[i][l].get(k) {
                                if self.parity(k).is_odd() {
                                    acc -= &(cil * cjk);
                                } else {
                                    acc += &(cil * cjk);
                                }
                            }
                        }
                    }
                    gram.add_at(i, j, &acc);
                }
            }
            gram
        })
    }

    /// K(x, y) = str(ad_x ad_y).
    pub fn killing_form(&self, x: &Element, y: &Element) -> Result<CycScalar> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.bilinear(self.killing_gram(), x, y))
    }

    /// Supertrace form str(XY) of the matrix realization.
    pub fn supertrace_form(&self, x: &Element, y: &Element) -> Result<CycScalar> {
        self.check_element(x)?;
        self.check_element(y)?;
        let r = self.realization.as_ref().ok_or(Error::NoRealization)?;
        let prod = r.matrix_of(x, self.conductor).checked_mul(&r.matrix_of(y, self.conductor))?;
        Ok(matrix_supertrace(&prod, r.even_dim))
    }

    /// Gram matrix of the realization supertrace form.
    pub fn supertrace_gram(&self) -> Result<SparseMatrix> {
        let n = self.dim();
        let mut gram = SparseMatrix::zero(n, n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                let v = self.supertrace_form(&self.basis_vector(i), &self.basis_vector(j))?;
                gram.set(i, j, v)?;
            }
        }
        Ok(gram)
    }

    pub(crate) fn bilinear(&self, gram: &SparseMatrix, x: &Element, y: &Element) -> CycScalar {
        let mut acc = CycScalar::zero(self.conductor);
        for (i, a) in x.iter() {
            let d = gram.row(i).dot(y, self.conductor);
            if !d.is_zero() {
                acc += &(a * &d);
            }
        }
        acc
    }

    /// Structure constants and parities agree (names and realizations ignored).
    pub fn same_structure(&self, other: &SuperAlgebra) -> bool {
        self.conductor == other.conductor
            && self.basis.iter().map(|b| b.parity).eq(other.basis.iter().map(|b| b.parity))
            && self.brackets == other.brackets
    }

    /// Copy of the algebra over a larger cyclotomic field.
    pub fn embed(&self, target: u32) -> Result<SuperAlgebra> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        let brackets =
            self.brackets.iter().map(|(&k, v)| Ok((k, v.embed(target)?))).collect::<Result<BTreeMap<_, _>>>()?;
        let realization = match &self.realization {
            None => None,
            Some(r) => Some(Realization {
                even_dim: r.even_dim,
                odd_dim: r.odd_dim,
                matrices: r.matrices.iter().map(|m| m.embed(target)).collect::<Result<_>>()?,
                regular: r.regular.as_ref().map(|v| v.embed(target)).transpose()?,
            }),
        };
        SuperAlgebra::new(self.name.clone(), target, self.basis.clone(), brackets, realization)
    }
}

/// Supertrace of a supermatrix with the given even block size.
pub fn matrix_supertrace(m: &SparseMatrix, even_dim: usize) -> CycScalar {
    let mut acc = CycScalar::zero(m.conductor());
    for i in 0..m.rows() {
        if let Some(c) = m.row(i).get(i) {
            if i < even_dim {
                acc += c;
            } else {
                acc -= c;
            }
        }
    }
    acc
}
