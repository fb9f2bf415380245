use crate::classical::{
    cartan_subalgebra, root_decomposition, triangular_decomposition, RootSystem, TriangularDecomposition,
};
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, SpanSolver, SparseMatrix, SparseVec, MAX_CONDUCTOR};
use crate::liesuper::{Element, SuperAlgebra};

/// A finite-order automorphism of an algebra, stored over the field of its
/// order's roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    /// Column j is the image of basis vector j.
    pub matrix: SparseMatrix,
    pub order: u32,
    pub conductor: u32,
    /// Node permutation and scale it was built from.
    pub permutation: Vec<usize>,
    pub scale: CycScalar,
}

impl Automorphism {
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.matrix.mul_vec(x)
    }

    pub fn identity(algebra: &SuperAlgebra) -> Automorphism {
        Automorphism {
            matrix: SparseMatrix::identity(algebra.dim(), algebra.conductor()),
            order: 1,
            conductor: algebra.conductor(),
            permutation: Vec::new(),
            scale: algebra.one(),
        }
    }

    /// Checks nu([x, y]) = [nu x, nu y] on all basis pairs and that nu is even.
    pub fn verify_homomorphism(&self, algebra: &SuperAlgebra) -> Result<()> {
        let images: Vec<Element> = (0..algebra.dim()).map(|j| self.matrix.column(j)).collect();
        for (j, img) in images.iter().enumerate() {
            if algebra.parity_of(img)? != algebra.parity(j) {
                return Err(Error::ExtensionInconsistent(format!("image of basis {j} changes parity")));
            }
        }
        for i in 0..algebra.dim() {
            for j in i..algebra.dim() {
                let lhs = self.apply(algebra.bracket_basis(i, j))?;
                let rhs = algebra.bracket(&images[i], &images[j])?;
                if lhs != rhs {
                    return Err(Error::ExtensionInconsistent(format!("bracket of basis {i} and {j} not preserved")));
                }
            }
        }
        Ok(())
    }
}

/// Checks a_ij = scale * a_{perm(i), perm(j)} and that perm preserves parities.
pub fn diagram_compatible(td: &TriangularDecomposition, perm: &[usize], scale: &CycScalar) -> Result<()> {
    let n = td.rank();
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::DiagramIncompatible(format!("{perm:?} is not a permutation of {n} nodes")));
    }
    for i in 0..n {
        if td.parities[i] != td.parities[perm[i]] {
            return Err(Error::DiagramIncompatible(format!("node {i} and {} differ in parity", perm[i])));
        }
        for j in 0..n {
            if td.cartan_matrix[i][j] != scale * &td.cartan_matrix[perm[i]][perm[j]] {
                return Err(Error::DiagramIncompatible(format!("entry ({i}, {j}) breaks the symmetry")));
            }
        }
    }
    Ok(())
}

/// A scale making `perm` compatible with the Cartan matrix, if one exists.
pub fn compatible_scale(td: &TriangularDecomposition, perm: &[usize], conductor: u32) -> Option<CycScalar> {
    let n = td.rank();
    if perm.len() != n {
        return None;
    }
    let mut candidate = CycScalar::one(conductor);
    'find: for i in 0..n {
        for j in 0..n {
            let target = td.cartan_matrix.get(perm[i]).and_then(|r| r.get(perm[j]))?;
            if !target.is_zero() {
                candidate = td.cartan_matrix[i][j].checked_div(target).ok()?;
                break 'find;
            }
        }
    }
    diagram_compatible(td, perm, &candidate).ok().map(|_| candidate)
}

/// Extends e_i -> scale e_perm(i), f_i -> f_perm(i) to an automorphism.
pub fn diagram_automorphism(
    algebra: &SuperAlgebra,
    td: &TriangularDecomposition,
    perm: &[usize],
    scale: &CycScalar,
) -> Result<Automorphism> {
    diagram_compatible(td, perm, scale)?;
    let mut generators = Vec::new();
    for (i, t) in td.chevalley.iter().enumerate() {
        let target = &td.chevalley[perm[i]];
        generators.push((t.e.clone(), target.e.scaled(scale)));
        generators.push((t.f.clone(), target.f.clone()));
    }
    let matrix = extend_from_generators(algebra, &generators)?;
    let order = order_of(&matrix)?;
    let conductor = if order == 1 { algebra.conductor() } else { order };
    let auto = Automorphism {
        matrix: matrix.embed(conductor)?,
        order,
        conductor,
        permutation: perm.to_vec(),
        scale: scale.embed(conductor)?,
    };
    auto.verify_homomorphism(&algebra.embed(conductor)?)?;
    Ok(auto)
}

struct Extension {
    known: SpanSolver,
    sources: Vec<Element>,
    images: Vec<Element>,
    queue: Vec<usize>,
}

impl Extension {
    /// Records x -> y, or checks it against the images already determined.
    fn offer(&mut self, x: Element, y: Element) -> Result<()> {
        match self.known.coordinates(&x) {
            Some(c) => {
                let mut predicted = SparseVec::new();
                for (k, coef) in c.iter() {
                    predicted.add_scaled(coef, &self.images[k]);
                }
                if predicted != y {
                    return Err(Error::ExtensionInconsistent("images of dependent elements disagree".into()));
                }
            }
            None => {
                self.known.push(&x);
                self.sources.push(x);
                self.images.push(y);
                self.queue.push(self.sources.len() - 1);
            }
        }
        Ok(())
    }
}

/// The linear map determined by images of generators and the rule
/// nu([g, x]) = [nu g, nu x], with a consistency check at every dependency.
pub fn extend_from_generators(algebra: &SuperAlgebra, generators: &[(Element, Element)]) -> Result<SparseMatrix> {
    let conductor = algebra.conductor();
    let mut ext = Extension { known: SpanSolver::new(conductor), sources: vec![], images: vec![], queue: vec![] };
    for (x, y) in generators {
        ext.offer(x.clone(), y.clone())?;
    }
    while let Some(k) = ext.queue.pop() {
        for (g, ng) in generators {
            let z = algebra.bracket(g, &ext.sources[k])?;
            let nz = algebra.bracket(ng, &ext.images[k])?;
            ext.offer(z, nz)?;
        }
    }
    if ext.known.rank() != algebra.dim() {
        return Err(Error::ExtensionInconsistent(format!(
            "generators span a subalgebra of dimension {} of {}",
            ext.known.rank(),
            algebra.dim()
        )));
    }
    let mut columns = Vec::with_capacity(algebra.dim());
    for j in 0..algebra.dim() {
        let c = ext.known.coordinates(&algebra.basis_vector(j)).expect("full rank");
        let mut col = SparseVec::new();
        for (k, coef) in c.iter() {
            col.add_scaled(coef, &ext.images[k]);
        }
        columns.push(col);
    }
    SparseMatrix::from_columns(algebra.dim(), conductor, &columns)
}

/// Smallest k with M^k = I, up to the largest supported conductor.
pub fn order_of(matrix: &SparseMatrix) -> Result<u32> {
    let id = SparseMatrix::identity(matrix.rows(), matrix.conductor());
    let mut power = matrix.clone();
    for k in 1..=MAX_CONDUCTOR {
        if power == id {
            return Ok(k);
        }
        power = power.checked_mul(matrix)?;
    }
    Err(Error::UnsupportedConductor(MAX_CONDUCTOR + 1))
}

/// Root data of an algebra with its preferred base.
pub fn root_data(algebra: &SuperAlgebra) -> Result<(RootSystem, TriangularDecomposition)> {
    let h = cartan_subalgebra(algebra)?;
    let rs = root_decomposition(algebra, &h)?;
    let td = triangular_decomposition(algebra, &rs, &rs.base)?;
    Ok((rs, td))
}

/// The reversal of n nodes, the usual diagram flip.
pub fn flip(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// A diagram automorphism for `perm` on the first base, in breadth-first
/// chamber order, on which the permutation satisfies the Cartan-matrix
/// compatibility for some scale.
pub fn fold_automorphism(algebra: &SuperAlgebra, perm: &[usize]) -> Result<(Automorphism, TriangularDecomposition)> {
    let h = cartan_subalgebra(algebra)?;
    let rs = root_decomposition(algebra, &h)?;
    let mut last_error = Error::DiagramIncompatible(format!("no base admits the permutation {perm:?}"));
    for base in rs.chambers(algebra, 5000)? {
        let td = triangular_decomposition(algebra, &rs, &base)?;
        let Some(scale) = compatible_scale(&td, perm, algebra.conductor()) else {
            continue;
        };
        match diagram_automorphism(algebra, &td, perm, &scale) {
            Ok(auto) => return Ok((auto, td)),
            Err(e) => last_error = e,
        }
    }
    Err(last_error)
}

/// Parses "flip", "id" or a comma-separated permutation.
pub fn parse_permutation(text: &str, rank: usize) -> Result<Vec<usize>> {
    match text.trim() {
        "flip" => Ok(flip(rank)),
        "id" | "identity" => Ok((0..rank).collect()),
        list => list
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation '{text}'"))))
            .collect(),
    }
}
