use super::automorphism::{root_data, Automorphism};
use crate::classical::{
    build_osp, build_sl, cartan_subalgebra, distinguished_simple_roots, root_decomposition, triangular_decomposition,
};
use crate::error::{Error, Result};
use crate::exactcore::{kernel, CycScalar, SpanSolver, SparseMatrix};
use crate::liesuper::{Element, Parity, SubAlgebra, SuperAlgebra};

/// Eigenspaces g_s = {x : nu x = z^s x} of a finite-order automorphism.
#[derive(Clone, Debug)]
pub struct GradedDecomposition {
    pub conductor: u32,
    pub components: Vec<Vec<Element>>,
}

impl GradedDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }

    /// Index of the component for degree s, reduced mod the order.
    pub fn slot(&self, s: i64) -> usize {
        s.rem_euclid(self.order() as i64) as usize
    }
}

/// Exact eigenspace decomposition of `algebra` under `nu`; the algebra is
/// moved to the automorphism's field first.
pub fn eigenspace_decomposition(algebra: &SuperAlgebra, nu: &Automorphism) -> Result<GradedDecomposition> {
    let algebra = algebra.embed(nu.conductor)?;
    let n = algebra.dim();
    let m = nu.order;
    let mut components = Vec::with_capacity(m as usize);
    for s in 0..m {
        let shift = SparseMatrix::identity(n, nu.conductor).scaled(&CycScalar::zeta_pow(nu.conductor, s as i64));
        let mut space = kernel(&nu.matrix.checked_sub(&shift)?)?;
        space.sort_by_key(|v| v.leading().map(|(i, _)| i));
        components.push(space);
    }
    let total: usize = components.iter().map(Vec::len).sum();
    if total != n {
        return Err(Error::Dimension(format!("eigenspaces span {total} of {n} dimensions")));
    }
    let decomposition = GradedDecomposition { conductor: nu.conductor, components };
    check_bracket_compatible(&algebra, &decomposition)?;
    Ok(decomposition)
}

/// [g_s, g_t] lies in g_{s+t} on all component basis pairs.
pub fn check_bracket_compatible(algebra: &SuperAlgebra, dec: &GradedDecomposition) -> Result<()> {
    let spans: Vec<SpanSolver> = dec.components.iter().map(|c| SpanSolver::from_vectors(dec.conductor, c)).collect();
    for s in 0..dec.order() {
        for t in s..dec.order() {
            let target = &spans[(s + t) % dec.order()];
            for x in &dec.components[s] {
                for y in &dec.components[t] {
                    if !target.contains(&algebra.bracket(x, y)?) {
                        return Err(Error::Invalid(format!("[g_{s}, g_{t}] leaves g_{}", (s + t) % dec.order())));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The fixed points g^nu as a standalone algebra with its embedding.
pub fn fixed_subalgebra(algebra: &SuperAlgebra, nu: &Automorphism) -> Result<SubAlgebra> {
    let dec = eigenspace_decomposition(algebra, nu)?;
    let ambient = algebra.embed(nu.conductor)?;
    let mut sub = ambient.subalgebra_closure(&dec.components[0])?;
    if sub.algebra.dim() != dec.components[0].len() {
        return Err(Error::Invalid("fixed points are not closed under the bracket".into()));
    }
    sub.algebra = sub.algebra.with_name(format!("fix({})", algebra.name()));
    Ok(sub)
}

/// Cartan data used to recognise a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub dim: usize,
    pub super_dim: (usize, usize),
    pub matrix: Vec<Vec<CycScalar>>,
    pub parities: Vec<Parity>,
}

impl CartanData {
    /// Equality up to simultaneous permutation of nodes, where rows with zero
    /// diagonal (isotropic nodes, whose normalization is not canonical) only
    /// need to agree up to a nonzero factor.
    pub fn equivalent(&self, other: &CartanData) -> bool {
        if self.dim != other.dim || self.super_dim != other.super_dim || self.parities.len() != other.parities.len() {
            return false;
        }
        let Some((mine, theirs)) = common_field(&self.matrix, &other.matrix) else {
            return false;
        };
        let n = self.parities.len();
        permutations(n).into_iter().any(|p| {
            (0..n).all(|i| {
                self.parities[i] == other.parities[p[i]] && {
                    let row: Vec<&CycScalar> = (0..n).map(|j| &mine[i][j]).collect();
                    let target: Vec<&CycScalar> = (0..n).map(|j| &theirs[p[i]][p[j]]).collect();
                    rows_match(&row, &target, !mine[i][i].is_zero())
                }
            })
        })
    }
}

type Matrix = Vec<Vec<CycScalar>>;

fn common_field(a: &Matrix, b: &Matrix) -> Option<(Matrix, Matrix)> {
    let conductor = |m: &Matrix| m.iter().flatten().next().map_or(1, CycScalar::conductor);
    let target = num_integer::lcm(conductor(a), conductor(b));
    let lift = |m: &Matrix| -> Option<Matrix> {
        m.iter().map(|row| row.iter().map(|c| c.embed(target).ok()).collect()).collect()
    };
    Some((lift(a)?, lift(b)?))
}

fn rows_match(row: &[&CycScalar], target: &[&CycScalar], exact: bool) -> bool {
    if exact {
        return row == target;
    }
    let Some(k) = row.iter().position(|a| !a.is_zero()) else {
        return target.iter().all(|b| b.is_zero());
    };
    match target[k].checked_div(row[k]) {
        Ok(factor) => row.iter().zip(target).all(|(a, b)| &(&factor * *a) == *b),
        Err(_) => false,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Cartan data of every distinguished base of an algebra.
pub fn distinguished_cartan_data(algebra: &SuperAlgebra) -> Result<Vec<CartanData>> {
    let h = cartan_subalgebra(algebra)?;
    let rs = root_decomposition(algebra, &h)?;
    let mut out = Vec::new();
    for base in rs.chambers(algebra, 5000)? {
        if !rs.is_distinguished(&base) {
            continue;
        }
        let td = triangular_decomposition(algebra, &rs, &base)?;
        let data = CartanData {
            dim: algebra.dim(),
            super_dim: algebra.super_dim(),
            matrix: td.cartan_matrix.clone(),
            parities: td.parities.clone(),
        };
        if !out.contains(&data) {
            out.push(data);
        }
    }
    Ok(out)
}

/// Result of matching an algebra against the in-scope families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    /// Preferred label, `None` for unknown.
    pub label: Option<String>,
    /// Every family whose Cartan data matches.
    pub matches: Vec<String>,
    pub data: Option<CartanData>,
}

impl Identification {
    pub fn label_or_unknown(&self) -> &str {
        self.label.as_deref().unwrap_or("unknown")
    }
}

/// Candidate families with given even and odd dimensions.
fn candidates(even: usize, odd: usize) -> Vec<(String, SuperAlgebra)> {
    let mut out = Vec::new();
    let mut shapes: Vec<(usize, usize)> =
        (1..=7usize).flat_map(|m| (1..=(8 - m)).map(move |n| (m, n))).filter(|&(m, n)| m != n).collect();
    shapes.sort_by_key(|&(m, n)| (m < n, m.min(n), m.max(n)));
    for (m, n) in shapes {
        if m * m + n * n - 1 == even && 2 * m * n == odd {
            if let Ok(g) = build_sl(m, n) {
                out.push((g.name().to_string(), g));
            }
        }
    }
    for m in 1..=5usize {
        for n in 1..=2usize {
            if m * (m - 1) / 2 + n * (2 * n + 1) == even && 2 * m * n == odd {
                if let Ok(g) = build_osp(m, 2 * n) {
                    out.push((g.name().to_string(), g));
                }
            }
        }
    }
    out
}

/// Identifies a basic classical algebra among sl(m|n) and osp(m|2n) by
/// dimension, the parity vector of a distinguished base and its Cartan
/// matrix up to node permutation. An algebra whose own name matches is
/// labelled by it; otherwise the first match is used.
pub fn identify_type(algebra: &SuperAlgebra) -> Result<Identification> {
    let (even, odd) = algebra.super_dim();
    let data = match algebra.realization() {
        None => return Ok(Identification { label: None, matches: vec![], data: None }),
        Some(_) => {
            let (rs, _) = root_data(algebra)?;
            let base = distinguished_simple_roots(algebra, &rs)?;
            let td = triangular_decomposition(algebra, &rs, &base)?;
            CartanData {
                dim: algebra.dim(),
                super_dim: (even, odd),
                matrix: td.cartan_matrix.clone(),
                parities: td.parities.clone(),
            }
        }
    };
    let mut matches = Vec::new();
    for (name, g) in candidates(even, odd) {
        if distinguished_cartan_data(&g)?.iter().any(|d| data.equivalent(d)) {
            matches.push(name);
        }
    }
    let label = if matches.iter().any(|m| m == algebra.name()) {
        Some(algebra.name().to_string())
    } else {
        matches.first().cloned()
    };
    Ok(Identification { label, matches, data: Some(data) })
}
