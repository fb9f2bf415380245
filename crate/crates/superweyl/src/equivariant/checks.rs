use std::fmt;

use super::automorphism::Automorphism;
use super::decomposition::GradedDecomposition;
use crate::classical::{cartan_subalgebra, root_triple, weight_spaces, Base, RootSystem};
use crate::error::{Error, Result};
use crate::exactcore::{kernel, rank, CycScalar, Echelon, SparseMatrix, SparseVec};
use crate::liesuper::{Element, Parity, SubAlgebra, SuperAlgebra};

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Witness of failure or a short summary on success.
    pub detail: String,
}

/// Per-check results for a folding, or a note that the checks were skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub outcomes: Vec<CheckOutcome>,
    /// Which invariant form was used for the pairing check.
    pub form: &'static str,
    pub skipped: Option<String>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

impl fmt::Display for StructuralReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(note) = &self.skipped {
            return writeln!(f, "skipped: {note}");
        }
        for o in &self.outcomes {
            writeln!(f, "{}: {} ({})", o.name, if o.passed { "pass" } else { "FAIL" }, o.detail)?;
        }
        Ok(())
    }
}

fn outcome(name: &'static str, failure: Option<String>, summary: String) -> CheckOutcome {
    match failure {
        Some(detail) => CheckOutcome { name, passed: false, detail },
        None => CheckOutcome { name, passed: true, detail: summary },
    }
}

/// Verifies the structure of `algebra` relative to the Cartan subalgebra
/// h_fix of the fixed points:
/// - `stable`: every weight space of h_fix is nu-stable;
/// - `self-normalizing`: the centralizer g^0 of h_fix is its own normalizer;
/// - `pairing`: the invariant form pairs g_i with g_j trivially unless
///   i + j = 0 mod m, and nondegenerately when it is;
/// - `cartan`: g^0 is the Cartan subalgebra of `algebra`.
pub fn structural_checks(
    algebra: &SuperAlgebra,
    nu: &Automorphism,
    decomposition: &GradedDecomposition,
    fixed: &SubAlgebra,
) -> Result<StructuralReport> {
    let algebra = algebra.embed(nu.conductor)?;
    if fixed.algebra.dim() == 0 {
        return Ok(StructuralReport {
            outcomes: vec![],
            form: "none",
            skipped: Some("the fixed subalgebra is zero".into()),
        });
    }
    let h_fix: Vec<Element> = cartan_subalgebra(&fixed.algebra)?.iter().map(|x| fixed.include(x)).collect();
    let spaces = weight_spaces(&algebra, &h_fix)?;
    let centralizer = &spaces[0].space;
    let mut outcomes = Vec::new();

    let mut failure = None;
    'stable: for (k, w) in spaces.iter().enumerate() {
        let mut span = Echelon::new();
        for v in &w.space {
            span.insert(v);
        }
        for v in &w.space {
            if !span.contains(&nu.apply(v)?) {
                failure = Some(format!("weight space {k} of dimension {} is moved", w.space.len()));
                break 'stable;
            }
        }
    }
    outcomes.push(outcome("stable", failure, format!("{} weight spaces", spaces.len())));

    let normalizer = normalizer_dim(&algebra, centralizer)?;
    let failure = (normalizer != centralizer.len())
        .then(|| format!("normalizer has dimension {normalizer}, centralizer {}", centralizer.len()));
    outcomes.push(outcome("self-normalizing", failure, format!("dim g^0 = {}", centralizer.len())));

    let (gram, form) = invariant_gram(&algebra)?;
    let m = decomposition.order();
    let mut failure = None;
    'pairing: for i in 0..m {
        for j in 0..m {
            let block = pairing_block(&gram, &decomposition.components[i], &decomposition.components[j], nu.conductor)?;
            if (i + j) % m != 0 {
                if !block.is_zero() {
                    failure = Some(format!("block ({i}, {j}) is nonzero"));
                    break 'pairing;
                }
            } else {
                let size = decomposition.components[i].len();
                if decomposition.components[j].len() != size || rank(&block)? != size {
                    failure = Some(format!("block ({i}, {j}) is degenerate"));
                    break 'pairing;
                }
            }
        }
    }
    outcomes.push(outcome("pairing", failure, format!("{form} form, {m} components")));

    let cartan = cartan_subalgebra(&algebra)?;
    let mut span = Echelon::new();
    for v in &cartan {
        span.insert(v);
    }
    let failure = if centralizer.len() != cartan.len() || !centralizer.iter().all(|v| span.contains(v)) {
        Some(format!("g^0 has dimension {}, Cartan {}", centralizer.len(), cartan.len()))
    } else {
        None
    };
    outcomes.push(outcome("cartan", failure, format!("dim = {}", cartan.len())));

    Ok(StructuralReport { outcomes, form, skipped: None })
}

/// Dimension of {x : [x, s] in s} for the span s of `members`.
fn normalizer_dim(algebra: &SuperAlgebra, members: &[Element]) -> Result<usize> {
    let mut span = Echelon::new();
    for v in members {
        span.insert(v);
    }
    let n = algebra.dim();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let x = algebra.basis_vector(j);
        let mut col = SparseVec::new();
        for (k, y) in members.iter().enumerate() {
            let rem = span.reduce(&algebra.bracket(&x, y)?);
            for (i, c) in rem.iter() {
                col.set(k * n + i, c.clone());
            }
        }
        columns.push(col);
    }
    let system = SparseMatrix::from_columns(n * members.len().max(1), algebra.conductor(), &columns)?;
    Ok(kernel(&system)?.len())
}

/// The Killing Gram matrix when nondegenerate, otherwise the supertrace form.
pub fn invariant_gram(algebra: &SuperAlgebra) -> Result<(SparseMatrix, &'static str)> {
    let killing = algebra.killing_gram();
    if rank(killing)? == algebra.dim() {
        return Ok((killing.clone(), "Killing"));
    }
    Ok((algebra.supertrace_gram()?, "supertrace"))
}

fn pairing_block(gram: &SparseMatrix, left: &[Element], right: &[Element], conductor: u32) -> Result<SparseMatrix> {
    let images = right.iter().map(|y| gram.mul_vec(y)).collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<CycScalar>> =
        left.iter().map(|x| images.iter().map(|gy| x.dot(gy, conductor)).collect()).collect();
    if rows.is_empty() {
        return Ok(SparseMatrix::zero(0, right.len(), conductor));
    }
    SparseMatrix::from_dense(conductor, &rows)
}

/// The lowest root for a base and whether it is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionC {
    pub holds: bool,
    /// Index of the lowest root -theta in the root list.
    pub lowest_root: usize,
    pub parity: Parity,
    /// Coefficients of -theta over the simple roots.
    pub coefficients: Vec<i64>,
}

/// The lowest root is the negative root whose root vector is killed by ad of
/// every negative simple root vector; the condition holds iff it is even.
pub fn check_condition_c(algebra: &SuperAlgebra, rs: &RootSystem, base: &Base) -> Result<ConditionC> {
    let lowering: Vec<Element> =
        base.simple.iter().map(|&s| root_triple(algebra, rs, s).map(|t| t.f)).collect::<Result<_>>()?;
    let mut candidates = Vec::new();
    for (i, r) in rs.roots.iter().enumerate() {
        if base.positive[i] {
            continue;
        }
        let mut killed = true;
        for f in &lowering {
            for v in &r.space {
                killed &= algebra.bracket(f, v)?.is_zero();
            }
        }
        if killed {
            candidates.push(i);
        }
    }
    let lowest =
        candidates.iter().map(|&i| base.height(i)).min().ok_or_else(|| {
            Error::RootDecomposition("no negative root is annihilated by the lowering operators".into())
        })?;
    let at_min: Vec<usize> = candidates.into_iter().filter(|&i| base.height(i) == lowest).collect();
    if at_min.len() != 1 {
        return Err(Error::RootDecomposition(format!("{} lowest roots", at_min.len())));
    }
    let root = at_min[0];
    let parity = rs.roots[root].parity;
    Ok(ConditionC {
        holds: parity == Parity::Even,
        lowest_root: root,
        parity,
        coefficients: base.coefficients[root].clone(),
    })
}
