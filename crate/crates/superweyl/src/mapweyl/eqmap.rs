use std::cmp::Reverse;

use super::gamma::{map_superalgebra, tensor_label, GammaAlgebra};
use crate::classical::{
    coroot, distinguished_simple_roots, root_decomposition, triangular_decomposition, weight_spaces, Base, RootSystem,
    TriangularDecomposition,
};
use crate::equivariant::{
    eigenspace_decomposition, fixed_subalgebra, fold_automorphism, parse_permutation, root_data, Automorphism,
    GradedDecomposition,
};
use crate::error::{Error, Result};
use crate::exactcore::{kernel, CycScalar, Echelon, SpanSolver, SparseMatrix, SparseVec};
use crate::liesuper::{Element, Parity, SubAlgebra, SuperAlgebra};

/// An algebra with a finite-order diagram automorphism, its fixed subalgebra
/// and the root data of the fixed subalgebra for a distinguished base.
#[derive(Clone, Debug)]
pub struct Folding {
    /// The algebra over the automorphism's field.
    pub algebra: SuperAlgebra,
    pub automorphism: Automorphism,
    pub decomposition: GradedDecomposition,
    pub fixed: SubAlgebra,
    pub roots: RootSystem,
    pub base: Base,
    pub triangular: TriangularDecomposition,
    /// Cartan subalgebra of the fixed points, inside `algebra`.
    pub cartan: Vec<Element>,
    cartan_solver: SpanSolver,
    simple_solver: SpanSolver,
}

impl Folding {
    pub fn new(algebra: &SuperAlgebra, automorphism: Automorphism) -> Result<Self> {
        let decomposition = eigenspace_decomposition(algebra, &automorphism)?;
        let fixed = fixed_subalgebra(algebra, &automorphism)?;
        let algebra = algebra.embed(automorphism.conductor)?;
        let h = crate::classical::cartan_subalgebra(&fixed.algebra)?;
        let roots = root_decomposition(&fixed.algebra, &h)?;
        let base = distinguished_simple_roots(&fixed.algebra, &roots)?;
        let triangular = triangular_decomposition(&fixed.algebra, &roots, &base)?;
        let cartan: Vec<Element> = roots.cartan.iter().map(|x| fixed.include(x)).collect();
        let conductor = algebra.conductor();
        let cartan_solver = SpanSolver::from_vectors(conductor, &cartan);
        let simple: Vec<SparseVec> =
            base.simple.iter().map(|&s| SparseVec::from_dense(&roots.roots[s].values)).collect();
        let simple_solver = SpanSolver::from_vectors(conductor, &simple);
        Ok(Folding {
            algebra,
            automorphism,
            decomposition,
            fixed,
            roots,
            base,
            triangular,
            cartan,
            cartan_solver,
            simple_solver,
        })
    }

    /// The trivial group acting on `algebra`.
    pub fn trivial(algebra: &SuperAlgebra) -> Result<Self> {
        Folding::new(algebra, Automorphism::identity(algebra))
    }

    /// "id", "flip" or an explicit node permutation of the preferred base.
    pub fn from_permutation(algebra: &SuperAlgebra, text: &str) -> Result<Self> {
        let (_, td) = root_data(algebra)?;
        let perm = parse_permutation(text, td.rank())?;
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Folding::trivial(algebra);
        }
        let (nu, _) = fold_automorphism(algebra, &perm)?;
        Folding::new(algebra, nu)
    }

    pub fn order(&self) -> u32 {
        self.automorphism.order
    }

    pub fn conductor(&self) -> u32 {
        self.algebra.conductor()
    }

    pub fn rank(&self) -> usize {
        self.base.simple.len()
    }

    /// Coordinates of an element of the fixed Cartan subalgebra in `cartan`.
    pub fn cartan_coordinates(&self, h: &Element) -> Result<Vec<CycScalar>> {
        let c = self
            .cartan_solver
            .coordinates(h)
            .ok_or_else(|| Error::Invalid("element is not in the fixed Cartan subalgebra".into()))?;
        Ok(c.to_dense(self.cartan.len(), self.conductor()))
    }

    /// Integer coefficients over the simple roots of a weight given by its
    /// values on `cartan`.
    pub fn root_coefficients(&self, values: &[CycScalar]) -> Result<Vec<i64>> {
        let rank = self.rank();
        if values.iter().all(CycScalar::is_zero) {
            return Ok(vec![0; rank]);
        }
        let c = self
            .simple_solver
            .coordinates(&SparseVec::from_dense(values))
            .ok_or_else(|| Error::RootDecomposition("weight outside the root lattice span".into()))?;
        c.to_dense(rank, self.conductor())
            .iter()
            .map(|x| {
                x.as_integer().ok_or_else(|| Error::RootDecomposition(format!("non-integral weight coefficient {x}")))
            })
            .collect()
    }

    /// Values of the highest weight on `cartan` from its values on the
    /// Chevalley coroots h_i of the distinguished base.
    pub fn weight_from_coroot_values(&self, lambda: &[i64]) -> Result<Vec<CycScalar>> {
        let rank = self.rank();
        if lambda.len() != rank {
            return Err(Error::InvalidWeight(format!("expected {rank} values, got {}", lambda.len())));
        }
        let n = self.cartan.len();
        let conductor = self.conductor();
        let rows = self
            .triangular
            .chevalley
            .iter()
            .map(|t| Ok(SparseVec::from_dense(&self.roots.cartan_coordinates(&t.h)?)))
            .collect::<Result<Vec<_>>>()?;
        let system = SparseMatrix::from_rows(n, conductor, rows)?;
        let rhs: SparseVec = lambda
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, CycScalar::from_int(conductor, v)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let sol = crate::exactcore::solve(&system, &rhs)?
            .ok_or_else(|| Error::InvalidWeight("coroot values are inconsistent".into()))?;
        if crate::exactcore::rank(&system)? != n {
            return Err(Error::InvalidWeight("coroots do not determine the weight".into()));
        }
        Ok(sol.to_dense(n, conductor))
    }

    /// lambda(h) for h in the fixed Cartan subalgebra (inside `algebra`).
    pub fn evaluate(&self, lambda: &[CycScalar], h: &Element) -> Result<CycScalar> {
        let coords = self.cartan_coordinates(h)?;
        Ok(coords.iter().zip(lambda).fold(CycScalar::zero(self.conductor()), |acc, (a, b)| acc + a * b))
    }

    /// Simple roots of the even part of the fixed subalgebra for the positive
    /// system of the distinguished base: even positive roots that are not a
    /// sum of two even positive roots.
    pub fn even_simple_roots(&self) -> Vec<usize> {
        let rs = &self.roots;
        let even: Vec<usize> =
            (0..rs.len()).filter(|&i| self.base.positive[i] && rs.roots[i].parity == Parity::Even).collect();
        even.iter()
            .copied()
            .filter(|&i| {
                !even.iter().any(|&a| {
                    even.iter().any(|&b| {
                        rs.roots[a]
                            .values
                            .iter()
                            .zip(&rs.roots[b].values)
                            .map(|(x, y)| x + y)
                            .eq(rs.roots[i].values.iter().cloned())
                    })
                })
            })
            .collect()
    }

    /// lambda(h_alpha) for the coroot of an even root of the fixed subalgebra.
    pub fn coroot_value(&self, lambda: &[CycScalar], root: usize) -> Result<CycScalar> {
        let h = coroot(&self.fixed.algebra, &self.roots, root)?;
        let coords = self.roots.cartan_coordinates(&h)?;
        Ok(coords.iter().zip(lambda).fold(CycScalar::zero(self.conductor()), |acc, (a, b)| acc + a * b))
    }

    /// Values of the weight lambda - sum depth_j alpha_j on the coroots h_i.
    pub fn coroot_values(&self, lambda: &[i64], depth: &[i64]) -> Vec<CycScalar> {
        let conductor = self.conductor();
        let a = &self.triangular.cartan_matrix;
        (0..self.rank())
            .map(|i| {
                let mut v = CycScalar::from_int(conductor, lambda[i]);
                for (j, &d) in depth.iter().enumerate() {
                    v -= &(&a[i][j].embed(conductor).expect("rational entry") * &CycScalar::from_int(conductor, d));
                }
                v
            })
            .collect()
    }
}

/// Role of a basis element of an equivariant map algebra in the triangular
/// decomposition used for highest-weight modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// Negative weight.
    Lowering,
    /// Weight zero with a non-unit coefficient.
    Loop,
    /// The fixed Cartan subalgebra tensored with the unit.
    Cartan,
    /// Positive weight.
    Raising,
}

/// A basis element x (x) a of (g (x) A)^Gamma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGenerator {
    pub kind: GeneratorKind,
    /// Weight vector x inside the folded algebra.
    pub element: Element,
    /// Basis index of the coefficient a.
    pub coefficient: usize,
    /// Eigenvalue exponent s with nu x = z^s x.
    pub component: u32,
    /// Weight as coefficients over the simple roots of the fixed subalgebra.
    pub weight: Vec<i64>,
    /// Degree of the coefficient.
    pub degree: u32,
}

impl MapGenerator {
    pub fn height(&self) -> i64 {
        self.weight.iter().sum()
    }
}

/// (g (x) A)^Gamma = sum_s g_s (x) A_{-s} on a basis of weight vectors,
/// ordered lowering, loop, Cartan, raising.
#[derive(Clone, Debug)]
pub struct EqMapAlgebra {
    pub algebra: SuperAlgebra,
    pub map_algebra: SuperAlgebra,
    /// Image of each basis element in `map_algebra`.
    pub embedding: Vec<Element>,
    pub generators: Vec<MapGenerator>,
    pub coefficients: GammaAlgebra,
    pub folding: Folding,
}

impl EqMapAlgebra {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Number of lowering and loop generators, which come first.
    pub fn cutoff(&self) -> usize {
        self.generators.iter().filter(|g| matches!(g.kind, GeneratorKind::Lowering | GeneratorKind::Loop)).count()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.algebra.dim()).map(|i| self.algebra.label(i).to_string()).collect()
    }

    pub fn of_kind(&self, kind: GeneratorKind) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.generators[i].kind == kind).collect()
    }

    /// The generator x (x) a with x the given element (up to scale) and a the
    /// coefficient basis element.
    pub fn find(&self, element: &Element, coefficient: usize) -> Option<(usize, CycScalar)> {
        self.generators.iter().enumerate().find_map(|(i, g)| {
            if g.coefficient != coefficient {
                return None;
            }
            let (k, lead) = g.element.leading()?;
            let c = element.get(k)?.checked_div(lead).ok()?;
            (g.element.scaled(&c) == *element).then_some((i, c))
        })
    }

    /// The generator of weight `weight`, coefficient `coefficient`, when unique.
    pub fn find_by_weight(&self, weight: &[i64], coefficient: usize) -> Option<usize> {
        let hits: Vec<usize> = (0..self.dim())
            .filter(|&i| self.generators[i].weight == weight && self.generators[i].coefficient == coefficient)
            .collect();
        (hits.len() == 1).then(|| hits[0])
    }
}

/// Weight-vector basis of each eigenspace g_s: for every weight of the fixed
/// Cartan subalgebra, the z^s-eigenvectors of nu inside that weight space.
fn adapted_basis(folding: &Folding) -> Result<Vec<(Vec<i64>, u32, Element)>> {
    let algebra = &folding.algebra;
    let nu = &folding.automorphism;
    let conductor = algebra.conductor();
    let spaces = weight_spaces(algebra, &folding.cartan)?;
    let mut out = Vec::new();
    for ws in spaces {
        let weight = folding.root_coefficients(&ws.values)?;
        for s in 0..nu.order {
            let vectors = if nu.order == 1 {
                ws.space.clone()
            } else {
                let shift = CycScalar::zeta_pow(conductor, s as i64);
                let columns =
                    ws.space.iter().map(|b| Ok(nu.apply(b)?.minus(&b.scaled(&shift)))).collect::<Result<Vec<_>>>()?;
                let system = SparseMatrix::from_columns(algebra.dim(), conductor, &columns)?;
                let mut vs: Vec<Element> = kernel(&system)?
                    .into_iter()
                    .map(|c| {
                        let mut v = SparseVec::new();
                        for (k, x) in c.iter() {
                            v.add_scaled(x, &ws.space[k]);
                        }
                        v
                    })
                    .collect();
                vs.sort_by_key(|v| v.leading().map(|(i, _)| i));
                vs
            };
            for v in vectors {
                out.push((weight.clone(), s, v));
            }
        }
    }
    Ok(out)
}

/// The equivariant map algebra (L (x) A)^Gamma for the folding's automorphism
/// and the action on A. The basis is checked against the fixed points of the
/// diagonal action computed independently as a kernel.
pub fn equivariant_map_subalgebra(folding: &Folding, coefficients: &GammaAlgebra) -> Result<EqMapAlgebra> {
    let m = folding.order();
    if coefficients.order != m {
        return Err(Error::Invalid(format!(
            "automorphism order {m} differs from the coefficient action order {}",
            coefficients.order
        )));
    }
    let conductor = folding.conductor();
    let algebra = &folding.algebra;
    let map_algebra = map_superalgebra(algebra, coefficients)?;
    let na = coefficients.dim();
    let mut generators = Vec::new();
    let mut names = Vec::new();
    for (n, (weight, s, element)) in adapted_basis(folding)?.into_iter().enumerate() {
        for j in coefficients.component(-(s as i64)) {
            let degree = coefficients.degrees[j];
            let kind = if weight.iter().any(|&c| c < 0) {
                GeneratorKind::Lowering
            } else if weight.iter().any(|&c| c > 0) {
                GeneratorKind::Raising
            } else if j == coefficients.unit {
                GeneratorKind::Cartan
            } else {
                GeneratorKind::Loop
            };
            if weight.iter().any(|&c| c < 0) && weight.iter().any(|&c| c > 0) {
                return Err(Error::RootDecomposition(format!("weight {weight:?} is neither positive nor negative")));
            }
            if kind == GeneratorKind::Loop && degree == 0 {
                return Err(Error::Invalid("non-unit coefficient of degree zero".into()));
            }
            let base_label = match element.leading() {
                Some((i, c)) if element.len() == 1 && c.is_one() => algebra.label(i).to_string(),
                _ => format!("v{n}"),
            };
            names.push(tensor_label(&base_label, &coefficients.labels[j]));
            generators.push((
                MapGenerator {
                    kind,
                    element: element.clone(),
                    coefficient: j,
                    component: s,
                    weight: weight.clone(),
                    degree,
                },
                generators.len(),
            ));
        }
    }
    generators.sort_by_key(|(g, seq)| {
        let height = g.height();
        let primary = match g.kind {
            GeneratorKind::Lowering => height,
            GeneratorKind::Raising => height,
            _ => 0,
        };
        (g.kind, primary, g.degree, Reverse(g.weight.clone()), *seq)
    });
    let order: Vec<usize> = generators.iter().map(|(_, seq)| *seq).collect();
    let generators: Vec<MapGenerator> = generators.into_iter().map(|(g, _)| g).collect();
    let labels: Vec<String> = order.iter().map(|&k| names[k].clone()).collect();
    let vectors: Vec<Element> = generators
        .iter()
        .map(|g| g.element.iter().map(|(i, c)| (i * na + g.coefficient, c.clone())).collect())
        .collect();
    verify_fixed_points(folding, coefficients, &map_algebra, &vectors)?;
    let name = if m == 1 { map_algebra.name().to_string() } else { format!("({})^G", map_algebra.name()) };
    let sub = map_algebra.induced(vectors, name)?;
    let algebra = sub.algebra.with_labels(labels)?;
    debug_assert_eq!(algebra.conductor(), conductor);
    Ok(EqMapAlgebra {
        algebra,
        map_algebra,
        embedding: sub.embedding,
        generators,
        coefficients: coefficients.clone(),
        folding: folding.clone(),
    })
}

/// The span of `vectors` equals the kernel of (nu (x) sigma) - 1 on L (x) A.
fn verify_fixed_points(
    folding: &Folding,
    coefficients: &GammaAlgebra,
    map_algebra: &SuperAlgebra,
    vectors: &[Element],
) -> Result<()> {
    let conductor = folding.conductor();
    let na = coefficients.dim();
    let nu = &folding.automorphism;
    let mut columns = Vec::with_capacity(map_algebra.dim());
    for i in 0..folding.algebra.dim() {
        let image = nu.matrix.column(i);
        for j in 0..na {
            let z = CycScalar::zeta_pow(conductor, coefficients.components[j] as i64);
            let mut col: SparseVec = image.iter().map(|(k, c)| (k * na + j, c * &z)).collect();
            col.add_at(i * na + j, &-CycScalar::one(conductor));
            columns.push(col);
        }
    }
    let system = SparseMatrix::from_columns(map_algebra.dim(), conductor, &columns)?;
    let fixed = kernel(&system)?;
    let mut span = Echelon::new();
    for v in &fixed {
        span.insert(v);
    }
    let expected: usize = (0..folding.order() as i64)
        .map(|s| folding.decomposition.components[s as usize].len() * coefficients.component(-s).len())
        .sum();
    if fixed.len() != vectors.len() || expected != vectors.len() || !vectors.iter().all(|v| span.contains(v)) {
        return Err(Error::Invalid(format!(
            "fixed points have dimension {}, constructed basis {}, expected {expected}",
            fixed.len(),
            vectors.len()
        )));
    }
    Ok(())
}
