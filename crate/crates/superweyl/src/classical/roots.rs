use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exactcore::{kernel, CycScalar, SpanSolver, SparseMatrix, SparseVec};
use crate::liesuper::{Element, Parity, SuperAlgebra};

/// Elements of the algebra whose realization matrices are diagonal.
pub fn cartan_subalgebra(algebra: &SuperAlgebra) -> Result<Vec<Element>> {
    let r = algebra.realization().ok_or(Error::NoRealization)?;
    let size = r.size();
    let mut rows = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a == b {
                continue;
            }
            let mut row = SparseVec::new();
            for (i, m) in r.matrices.iter().enumerate() {
                if let Some(c) = m.row(a).get(b) {
                    row.set(i, c.clone());
                }
            }
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    let system = SparseMatrix::from_rows(algebra.dim(), algebra.conductor(), rows)?;
    kernel(&system)
}

/// A nonzero root: its values on the Cartan basis, parity and root space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub values: Vec<CycScalar>,
    pub parity: Parity,
    pub space: Vec<Element>,
}

/// A choice of positive roots together with its simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    /// Indices (into the root list) of the simple roots, in display order.
    pub simple: Vec<usize>,
    /// Whether each root is positive.
    pub positive: Vec<bool>,
    /// Coefficients of each root over the simple roots.
    pub coefficients: Vec<Vec<i64>>,
}

impl Base {
    /// Indices of odd simple roots, given the root list.
    pub fn odd_simple(&self, roots: &[Root]) -> Vec<usize> {
        self.simple.iter().copied().filter(|&i| roots[i].parity.is_odd()).collect()
    }

    pub fn height(&self, root: usize) -> i64 {
        self.coefficients[root].iter().sum()
    }

    fn positive_set(&self) -> Vec<usize> {
        (0..self.positive.len()).filter(|&i| self.positive[i]).collect()
    }
}

/// Roots of an algebra with respect to a diagonal Cartan subalgebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub conductor: u32,
    pub cartan: Vec<Element>,
    pub roots: Vec<Root>,
    pub base: Base,
    lookup: HashMap<Vec<CycScalar>, usize>,
    cartan_solver: SpanSolver,
}

/// A joint eigenspace of commuting diagonal elements acting by ad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    pub values: Vec<CycScalar>,
    pub space: Vec<Element>,
}

/// Joint eigenspaces of ad over commuting elements with diagonal realization
/// matrices, the zero weight first. Candidate weights are the differences of
/// diagonal entries, which cover every weight of ad on matrices.
pub fn weight_spaces(algebra: &SuperAlgebra, elements: &[Element]) -> Result<Vec<WeightSpace>> {
    let r = algebra.realization().ok_or(Error::NoRealization)?;
    let conductor = algebra.conductor();
    let mut diag = Vec::with_capacity(elements.len());
    for h in elements {
        let m = r.matrix_of(h, conductor);
        if !m.is_diagonal() {
            return Err(Error::RootDecomposition("Cartan element is not diagonal".into()));
        }
        diag.push(m.diagonal());
    }
    let ads = elements.iter().map(|h| algebra.ad(h)).collect::<Result<Vec<_>>>()?;
    for a in &ads {
        for b in &ads {
            if a.checked_mul(b)? != b.checked_mul(a)? {
                return Err(Error::RootDecomposition("Cartan elements do not commute".into()));
            }
        }
    }
    let zero = vec![CycScalar::zero(conductor); elements.len()];
    let mut out = vec![WeightSpace { space: joint_eigenspace(algebra, &ads, &zero)?, values: zero.clone() }];
    let mut seen = HashSet::new();
    seen.insert(zero);
    let mut total = out[0].space.len();
    for a in 0..r.size() {
        for b in 0..r.size() {
            if a == b {
                continue;
            }
            let values: Vec<CycScalar> = diag.iter().map(|d| &d[a] - &d[b]).collect();
            if !seen.insert(values.clone()) {
                continue;
            }
            let space = joint_eigenspace(algebra, &ads, &values)?;
            if !space.is_empty() {
                total += space.len();
                out.push(WeightSpace { values, space });
            }
        }
    }
    if total != algebra.dim() {
        return Err(Error::RootDecomposition(format!("weight spaces span {total} of {} dimensions", algebra.dim())));
    }
    Ok(out)
}

/// Simultaneous eigenspace decomposition of the algebra under `cartan`,
/// with the preferred positive system: the one selected by the stored regular
/// element when there is one, otherwise the lexicographic one.
pub fn root_decomposition(algebra: &SuperAlgebra, cartan: &[Element]) -> Result<RootSystem> {
    let r = algebra.realization().ok_or(Error::NoRealization)?;
    let conductor = algebra.conductor();
    let mut spaces = weight_spaces(algebra, cartan)?.into_iter();
    let zero_space = spaces.next().expect("zero weight listed first").space;
    let cartan_span = SpanSolver::from_vectors(conductor, cartan);
    if zero_space.len() != cartan_span.rank() || !zero_space.iter().all(|v| cartan_span.contains(v)) {
        return Err(Error::RootDecomposition(format!(
            "zero weight space has dimension {} but the Cartan has dimension {}",
            zero_space.len(),
            cartan_span.rank()
        )));
    }
    let mut roots = Vec::new();
    for WeightSpace { values, space } in spaces {
        let parity = algebra.parity_of(&space[0])?;
        for v in &space {
            if algebra.parity_of(v)? != parity {
                return Err(Error::RootDecomposition("root space is not homogeneous".into()));
            }
        }
        roots.push(Root { values, parity, space });
    }
    let lookup = roots.iter().enumerate().map(|(i, r)| (r.values.clone(), i)).collect();
    let mut rs = RootSystem {
        conductor,
        cartan: cartan.to_vec(),
        roots,
        base: Base { simple: vec![], positive: vec![], coefficients: vec![] },
        lookup,
        cartan_solver: cartan_span,
    };
    let positive = match r.regular.as_ref() {
        Some(reg) => rs.positive_from_element(reg)?,
        None => rs.lexicographic_positive()?,
    };
    let base = rs.base_from_positive(&positive)?;
    rs.base = rs.reorder(&base, algebra);
    Ok(rs)
}

/// Joint kernel of (ad h_j - values_j) over the Cartan basis.
fn joint_eigenspace(algebra: &SuperAlgebra, ads: &[SparseMatrix], values: &[CycScalar]) -> Result<Vec<Element>> {
    let n = algebra.dim();
    let mut rows = Vec::new();
    for (ad, v) in ads.iter().zip(values) {
        let shifted = ad.checked_sub(&SparseMatrix::identity(n, algebra.conductor()).scaled(v))?;
        rows.extend(shifted.into_rows().into_iter().filter(|r| !r.is_zero()));
    }
    kernel(&SparseMatrix::from_rows(n, algebra.conductor(), rows)?)
}

fn rational_sign(value: &CycScalar) -> Result<i32> {
    value.rational_sign().ok_or_else(|| Error::RootDecomposition("root value is not rational".into()))
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Index of the root with the given values.
    pub fn find(&self, values: &[CycScalar]) -> Option<usize> {
        self.lookup.get(values).copied()
    }

    pub fn negative_of(&self, root: usize) -> usize {
        let neg: Vec<CycScalar> = self.roots[root].values.iter().map(|v| -v).collect();
        self.find(&neg).expect("root systems are symmetric")
    }

    /// Index of 2 * root when that is a root.
    pub fn double_of(&self, root: usize) -> Option<usize> {
        let two = CycScalar::from_int(self.conductor, 2);
        let dbl: Vec<CycScalar> = self.roots[root].values.iter().map(|v| v * &two).collect();
        self.find(&dbl)
    }

    /// Index of root / 2 when that is a root.
    pub fn half_of(&self, root: usize) -> Option<usize> {
        let half = CycScalar::from_rational(self.conductor, crate::exactcore::ratio(1, 2));
        let h: Vec<CycScalar> = self.roots[root].values.iter().map(|v| v * &half).collect();
        self.find(&h)
    }

    /// Odd roots whose double is not a root.
    pub fn is_isotropic(&self, root: usize) -> bool {
        self.roots[root].parity.is_odd() && self.double_of(root).is_none()
    }

    pub fn count(&self, parity: Parity) -> usize {
        self.roots.iter().filter(|r| r.parity == parity).count()
    }

    /// Coordinates of a Cartan element in the Cartan basis.
    pub fn cartan_coordinates(&self, h: &Element) -> Result<Vec<CycScalar>> {
        let c = self
            .cartan_solver
            .coordinates(h)
            .ok_or_else(|| Error::Invalid("element is not in the Cartan subalgebra".into()))?;
        Ok(c.to_dense(self.rank(), self.conductor))
    }

    /// alpha(h) for a root functional and a Cartan element.
    pub fn evaluate(&self, values: &[CycScalar], h: &Element) -> Result<CycScalar> {
        let coords = self.cartan_coordinates(h)?;
        let mut acc = CycScalar::zero(self.conductor);
        for (c, v) in coords.iter().zip(values) {
            acc += &(c * v);
        }
        Ok(acc)
    }

    fn positive_from_element(&self, h: &Element) -> Result<Vec<bool>> {
        self.roots
            .iter()
            .map(|r| match rational_sign(&self.evaluate(&r.values, h)?)? {
                0 => Err(Error::RootDecomposition("stored regular element is singular".into())),
                s => Ok(s > 0),
            })
            .collect()
    }

    fn lexicographic_positive(&self) -> Result<Vec<bool>> {
        self.roots
            .iter()
            .map(|r| {
                for v in &r.values {
                    match rational_sign(v)? {
                        0 => continue,
                        s => return Ok(s > 0),
                    }
                }
                Err(Error::RootDecomposition("zero root".into()))
            })
            .collect()
    }

    /// Simple roots of a positive system (positive roots that are not sums of
    /// two positive roots) and the coefficients of every root over them.
    pub fn base_from_positive(&self, positive: &[bool]) -> Result<Base> {
        let pos: Vec<usize> = (0..self.len()).filter(|&i| positive[i]).collect();
        for i in 0..self.len() {
            if positive[i] == positive[self.negative_of(i)] {
                return Err(Error::NotABase("positive set is not half of the roots".into()));
            }
        }
        let mut decomposable = vec![false; self.len()];
        for (a, &i) in pos.iter().enumerate() {
            for &j in &pos[a..] {
                let sum: Vec<CycScalar> =
                    self.roots[i].values.iter().zip(&self.roots[j].values).map(|(x, y)| x + y).collect();
                if let Some(k) = self.find(&sum) {
                    decomposable[k] = true;
                }
            }
        }
        let simple: Vec<usize> = pos.iter().copied().filter(|&i| !decomposable[i]).collect();
        let vectors: Vec<SparseVec> = simple.iter().map(|&i| SparseVec::from_dense(&self.roots[i].values)).collect();
        let solver = SpanSolver::from_vectors(self.conductor, &vectors);
        if solver.rank() != simple.len() {
            return Err(Error::NotABase("simple roots are dependent".into()));
        }
        let mut coefficients = Vec::with_capacity(self.len());
        for (i, r) in self.roots.iter().enumerate() {
            let c = solver
                .coordinates(&SparseVec::from_dense(&r.values))
                .ok_or_else(|| Error::NotABase("root outside the span of the simple roots".into()))?;
            let mut ints = vec![0i64; simple.len()];
            for (k, v) in c.iter() {
                ints[k] = v.as_integer().ok_or_else(|| Error::NotABase("non-integral coefficient".into()))?;
            }
            let sign = if positive[i] { 1 } else { -1 };
            if ints.iter().any(|&x| x * sign < 0) {
                return Err(Error::NotABase("root coefficients of mixed sign".into()));
            }
            coefficients.push(ints);
        }
        Ok(Base { simple, positive: positive.to_vec(), coefficients })
    }

    /// The same base with simple roots ordered by the first nonzero entry of
    /// their realization matrices (row-major), which follows the constructors'
    /// diagonal order.
    pub fn reorder(&self, base: &Base, algebra: &SuperAlgebra) -> Base {
        let Some(r) = algebra.realization() else {
            return base.clone();
        };
        let key = |i: usize| -> (usize, usize) {
            let m = r.matrix_of(&self.roots[i].space[0], algebra.conductor());
            (0..m.rows()).find_map(|a| m.row(a).leading().map(|(b, _)| (a, b))).unwrap_or((usize::MAX, usize::MAX))
        };
        let mut order: Vec<usize> = (0..base.simple.len()).collect();
        order.sort_by_key(|&k| key(base.simple[k]));
        Base {
            simple: order.iter().map(|&k| base.simple[k]).collect(),
            positive: base.positive.clone(),
            coefficients: base.coefficients.iter().map(|c| order.iter().map(|&k| c[k]).collect()).collect(),
        }
    }

    /// The adjacent positive system obtained by making the ray of a simple
    /// root negative.
    pub fn flip(&self, base: &Base, simple_root: usize) -> Result<Base> {
        let mut positive = base.positive.clone();
        let mut ray = vec![simple_root];
        ray.extend(self.double_of(simple_root));
        ray.extend(self.half_of(simple_root));
        for i in ray {
            positive[i] = false;
            positive[self.negative_of(i)] = true;
        }
        self.base_from_positive(&positive)
    }

    /// All positive systems reachable from the current one by flips, in
    /// breadth-first order (the current one first).
    pub fn chambers(&self, algebra: &SuperAlgebra, limit: usize) -> Result<Vec<Base>> {
        let start = self.reorder(&self.base, algebra);
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(start.positive_set());
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(b) = queue.pop_front() {
            for &s in &b.simple {
                let next = self.flip(&b, s)?;
                if seen.insert(next.positive_set()) {
                    queue.push_back(self.reorder(&next, algebra));
                }
            }
            out.push(b);
            if out.len() >= limit {
                break;
            }
        }
        Ok(out)
    }

    /// Replaces the current base.
    pub fn with_base(mut self, base: Base) -> Self {
        self.base = base;
        self
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        self.base.positive_set()
    }

    pub fn is_distinguished(&self, base: &Base) -> bool {
        base.odd_simple(&self.roots).len() == 1
    }

    /// Simple roots' values as sparse vectors.
    pub fn simple_values(&self, base: &Base) -> Vec<Vec<CycScalar>> {
        base.simple.iter().map(|&i| self.roots[i].values.clone()).collect()
    }

    /// Positive roots ordered by height then index.
    pub fn positive_by_height(&self) -> Vec<usize> {
        let mut pos = self.positive_roots();
        pos.sort_by_key(|&i| (self.base.height(i), i));
        pos
    }

    /// Sorted set of root indices of a given parity that are positive.
    pub fn positive_of_parity(&self, parity: Parity) -> BTreeSet<usize> {
        self.positive_roots().into_iter().filter(|&i| self.roots[i].parity == parity).collect()
    }
}

/// A base with exactly one odd simple root: the preferred base when it
/// qualifies, otherwise the first such base in breadth-first chamber order.
/// Without odd roots any base qualifies.
pub fn distinguished_simple_roots(algebra: &SuperAlgebra, rs: &RootSystem) -> Result<Base> {
    let purely_even = rs.roots.iter().all(|r| r.parity == Parity::Even);
    for b in rs.chambers(algebra, 5000)? {
        if purely_even || rs.is_distinguished(&b) {
            return Ok(b);
        }
    }
    Err(Error::NotABase("no base with a unique odd simple root".into()))
}
