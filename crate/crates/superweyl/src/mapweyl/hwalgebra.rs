use std::fmt;

use super::module::RepModule;
use super::pbw::render_monomial;
use super::weyl::{Character, WeylModule};
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, Echelon, SparseMatrix, SparseVec};

/// The algebra of operators on the lambda-weight space W_lambda induced by
/// the weight-zero loop generators, on the basis u_b with u_b w the basis
/// vectors of W_lambda.
#[derive(Clone, Debug)]
pub struct HighestWeightAlgebra {
    /// Indices in the Weyl module of the basis vectors of W_lambda.
    pub support: Vec<usize>,
    pub labels: Vec<String>,
    /// operators[a] is u_a restricted to W_lambda.
    pub operators: Vec<SparseMatrix>,
    /// table[a][b] = coordinates of u_a u_b.
    pub table: Vec<Vec<SparseVec>>,
    pub unit: usize,
    /// Words of generator indices realising each basis element.
    pub words: Vec<Vec<usize>>,
}

impl HighestWeightAlgebra {
    pub fn dim(&self) -> usize {
        self.support.len()
    }

    fn conductor(&self) -> u32 {
        self.operators.first().map_or(1, SparseMatrix::conductor)
    }

    pub fn multiply(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&(x * y), &self.table[i][j]);
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let unit = |i: usize| SparseVec::unit(i, CycScalar::one(self.conductor()));
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.multiply(&self.table[a][b], &unit(c)) == self.multiply(&unit(a), &self.table[b][c]))
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        let one = CycScalar::one(self.conductor());
        (0..self.dim()).all(|a| {
            let e = SparseVec::unit(a, one.clone());
            self.table[self.unit][a] == e && self.table[a][self.unit] == e
        })
    }

    /// Left regular representation: matrix of multiplication by u_a.
    pub fn regular_module(&self) -> Vec<SparseMatrix> {
        let n = self.dim();
        (0..n).map(|a| SparseMatrix::from_columns(n, self.conductor(), &self.table[a]).expect("square table")).collect()
    }
}

impl fmt::Display for HighestWeightAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim())?;
        writeln!(f, "unit {}", self.labels[self.unit])?;
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let terms: Vec<String> = self.table[a][b]
                    .iter()
                    .map(|(k, c)| format!("{}*{}", c.to_compact_string(), self.labels[k]))
                    .collect();
                let product = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                writeln!(f, "{} . {} = {}", self.labels[a], self.labels[b], product)?;
            }
        }
        Ok(())
    }
}

/// Matrix of the product of the generators in `word`, rightmost first.
fn word_operator(module: &RepModule, word: &[usize]) -> Result<SparseMatrix> {
    let mut out = SparseMatrix::identity(module.dim, module.conductor());
    for &x in word {
        out = out.checked_mul(&module.matrices[x])?;
    }
    Ok(out)
}

/// Image of a vector under the word, rightmost letter first.
fn apply_word(module: &RepModule, word: &[usize], v: &SparseVec) -> SparseVec {
    word.iter().rev().fold(v.clone(), |acc, &x| module.act_basis(x, &acc))
}

/// A_lambda as operators on W_lambda. The multiplication table is read off
/// the images of w, and every product of operators is checked to agree with
/// its table entry on all of W_lambda.
pub fn highest_weight_algebra(weyl: &WeylModule) -> Result<HighestWeightAlgebra> {
    if !weyl.certificate.converged {
        return Err(Error::NotConverged("the Weyl module did not converge".into()));
    }
    let support = weyl.highest_weight_space();
    let labels_all = weyl.labels();
    let n = support.len();
    let position = |i: usize| support.binary_search(&i).ok();
    let conductor = weyl.module.conductor();
    let words: Vec<Vec<usize>> = support.iter().map(|&i| weyl.basis[i].monomial.clone()).collect();
    let restrict = |m: &SparseMatrix| -> Result<SparseMatrix> {
        let columns = support
            .iter()
            .map(|&j| {
                let col = m.column(j);
                if col.indices().any(|i| position(i).is_none()) {
                    return Err(Error::Invalid("operator leaves the highest weight space".into()));
                }
                Ok(col.remap(position))
            })
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(n, conductor, &columns)
    };
    let operators = words.iter().map(|w| restrict(&word_operator(&weyl.module, w)?)).collect::<Result<Vec<_>>>()?;
    let w = weyl.highest_weight_vector();
    for (a, word) in words.iter().enumerate() {
        if apply_word(&weyl.module, word, &w) != SparseVec::unit(support[a], CycScalar::one(conductor)) {
            return Err(Error::Invalid("basis monomial does not reproduce its basis vector".into()));
        }
    }
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let product = operators[a].checked_mul(&operators[b])?;
            let coords = product.column(0);
            let mut expected = SparseMatrix::zero(n, n, conductor);
            for (k, c) in coords.iter() {
                expected.add_scaled(c, &operators[k])?;
            }
            if expected != product {
                return Err(Error::Invalid("operators on the highest weight space are not determined by w".into()));
            }
            table[a][b] = coords;
        }
    }
    let unit = words.iter().position(Vec::is_empty).ok_or_else(|| Error::Invalid("no unit".into()))?;
    let labels = words
        .iter()
        .map(|m| if m.is_empty() { "1".to_string() } else { format!("[{}]", render_monomial(m, &labels_all)) })
        .collect();
    Ok(HighestWeightAlgebra { support, labels, operators, table, unit, words })
}

/// Right action of u_a on W: (u w) u_a = u u_a w, as a matrix. Checked to
/// commute with every generator.
pub fn right_action(weyl: &WeylModule, algebra: &HighestWeightAlgebra, a: usize) -> Result<SparseMatrix> {
    let conductor = weyl.module.conductor();
    let image_of_w = SparseVec::unit(algebra.support[a], CycScalar::one(conductor));
    let columns: Vec<SparseVec> =
        weyl.basis.iter().map(|b| apply_word(&weyl.module, &b.monomial, &image_of_w)).collect();
    let matrix = SparseMatrix::from_columns(weyl.dim(), conductor, &columns)?;
    for m in &weyl.module.matrices {
        if m.checked_mul(&matrix)? != matrix.checked_mul(m)? {
            return Err(Error::Invalid("right action does not commute with the module action".into()));
        }
    }
    Ok(matrix)
}

/// The tensor product W (x)_{A_lambda} M with its module structure.
#[derive(Clone, Debug)]
pub struct FunctorModule {
    pub module: RepModule,
    /// (Weyl basis index, M basis index) of each kept basis vector.
    pub basis: Vec<(usize, usize)>,
    pub character: Character,
}

impl FunctorModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// W (x)_{A_lambda} M as the quotient of W (x) M by the span of
/// w.a (x) m - w (x) a.m, for an A_lambda-module M given by one matrix per
/// basis element of A_lambda.
pub fn weyl_functor_apply(
    weyl: &WeylModule,
    algebra: &HighestWeightAlgebra,
    actions: &[SparseMatrix],
) -> Result<FunctorModule> {
    let n = algebra.dim();
    if actions.len() != n {
        return Err(Error::Dimension(format!("{} matrices for an algebra of dimension {n}", actions.len())));
    }
    let dm = actions[0].rows();
    let conductor = weyl.module.conductor();
    if actions.iter().any(|m| m.rows() != dm || m.cols() != dm) {
        return Err(Error::Dimension("module matrices are not square of one size".into()));
    }
    if actions[algebra.unit] != SparseMatrix::identity(dm, conductor) {
        return Err(Error::Invalid("the unit does not act as the identity".into()));
    }
    for a in 0..n {
        for b in 0..n {
            let mut expected = SparseMatrix::zero(dm, dm, conductor);
            for (k, c) in algebra.table[a][b].iter() {
                expected.add_scaled(c, &actions[k])?;
            }
            if actions[a].checked_mul(&actions[b])? != expected {
                return Err(Error::Invalid(format!(
                    "module matrices fail the product {} . {}",
                    algebra.labels[a], algebra.labels[b]
                )));
            }
        }
    }
    let dw = weyl.dim();
    let index = |i: usize, j: usize| i * dm + j;
    let mut relations = Echelon::new();
    for (a, action) in actions.iter().enumerate() {
        let right = right_action(weyl, algebra, a)?;
        for i in 0..dw {
            let wa = right.column(i);
            for j in 0..dm {
                let mut v = SparseVec::new();
                for (k, c) in wa.iter() {
                    v.add_at(index(k, j), c);
                }
                for (l, c) in action.column(j).iter() {
                    v.add_at(index(i, l), &-c);
                }
                relations.insert(&v);
            }
        }
    }
    let identity = SparseMatrix::identity(dm, conductor);
    let matrices = weyl.module.matrices.iter().map(|m| kronecker(m, &identity)).collect::<Result<Vec<_>>>()?;
    let tensor = RepModule::new(weyl.module.algebra.clone(), dw * dm, matrices)?;
    let basis_relations: Vec<SparseVec> = relations.basis().cloned().collect();
    let submodule = tensor.submodule(&basis_relations);
    if submodule.rank() != relations.rank() {
        return Err(Error::Invalid("balancing relations do not span a submodule".into()));
    }
    let (module, kept) = tensor.quotient(&submodule)?;
    let basis: Vec<(usize, usize)> = kept.iter().map(|&k| (k / dm, k % dm)).collect();
    let mut character = Character::new();
    for &(i, _) in &basis {
        *character.entry(weyl.basis[i].depth.clone()).or_insert(0) += 1;
    }
    Ok(FunctorModule { module, basis, character })
}

fn kronecker(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = SparseMatrix::zero(a.rows() * rb, a.cols() * cb, a.conductor());
    for i in 0..a.rows() {
        for (j, x) in a.row(i).iter() {
            for k in 0..rb {
                for (l, y) in b.row(k).iter() {
                    out.add_at(i * rb + k, j * cb + l, &(x * y));
                }
            }
        }
    }
    Ok(out)
}
