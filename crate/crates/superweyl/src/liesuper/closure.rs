use std::collections::BTreeMap;

use super::algebra::{BasisElement, Element, Realization, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, SpanSolver, SparseVec};

/// A subalgebra as a standalone algebra together with its inclusion map.
#[derive(Clone, Debug)]
pub struct SubAlgebra {
    pub algebra: SuperAlgebra,
    /// Image in the ambient algebra of each basis vector of `algebra`.
    pub embedding: Vec<Element>,
}

impl SubAlgebra {
    /// Ambient element corresponding to an element of the subalgebra.
    pub fn include(&self, x: &Element) -> Element {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.embedding[i]);
        }
        out
    }
}

impl SuperAlgebra {
    /// Smallest bracket-closed homogeneous subspace containing `generators`.
    /// Inhomogeneous generators are split into their homogeneous parts. The
    /// basis is the reduced echelon basis of the span, ordered by pivot.
    pub fn subalgebra_closure(&self, generators: &[Element]) -> Result<SubAlgebra> {
        let mut span = Echelon::new();
        let mut queue: Vec<Element> = Vec::new();
        for g in generators {
            self.check_element(g)?;
            let (even, odd) = self.homogeneous_parts(g);
            for part in [even, odd] {
                if span.insert(&part) {
                    queue.push(part);
                }
            }
        }
        let mut members: Vec<Element> = Vec::new();
        while let Some(x) = queue.pop() {
            members.push(x);
            let x = members.last().expect("just pushed");
            for y in &members {
                let z = self.bracket_unchecked(x, y);
                if span.insert(&z) {
                    queue.push(z);
                }
            }
        }
        let basis_vectors: Vec<Element> = span.basis().cloned().collect();
        self.induced(basis_vectors, format!("sub({})", self.name()))
    }

    /// The standalone algebra on a bracket-closed homogeneous span given by
    /// `basis_vectors`, keeping their order.
    pub fn induced(&self, basis_vectors: Vec<Element>, name: String) -> Result<SubAlgebra> {
        let solver = SpanSolver::from_vectors(self.conductor(), &basis_vectors);
        if solver.rank() != basis_vectors.len() {
            return Err(Error::Invalid("subalgebra basis is not independent".into()));
        }
        let mut basis = Vec::with_capacity(basis_vectors.len());
        for (k, v) in basis_vectors.iter().enumerate() {
            let parity = self.parity_of(v)?;
            basis.push(BasisElement::new(self.describe(v, k), parity));
        }
        let mut brackets = BTreeMap::new();
        for i in 0..basis_vectors.len() {
            for j in i..basis_vectors.len() {
                let z = self.bracket_unchecked(&basis_vectors[i], &basis_vectors[j]);
                if z.is_zero() {
                    continue;
                }
                let coords = solver
                    .coordinates(&z)
                    .ok_or_else(|| Error::Invalid("span is not closed under the bracket".into()))?;
                brackets.insert((i, j), coords);
            }
        }
        let realization = self.realization().map(|r| Realization {
            even_dim: r.even_dim,
            odd_dim: r.odd_dim,
            matrices: basis_vectors.iter().map(|v| r.matrix_of(v, self.conductor())).collect(),
            regular: None,
        });
        let algebra = SuperAlgebra::new(name, self.conductor(), basis, brackets, realization)?;
        Ok(SubAlgebra { algebra, embedding: basis_vectors })
    }

    /// Label for a vector: the basis label when it is a basis vector, otherwise
    /// a generic name.
    fn describe(&self, v: &Element, k: usize) -> String {
        if v.len() == 1 {
            let (i, c) = v.leading().expect("nonzero");
            if c.is_one() {
                return self.label(i).to_string();
            }
        }
        format!("u{k}")
    }
}
