use std::collections::BTreeMap;
use std::fmt;

use super::roots::{Base, RootSystem};
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, Echelon};
use crate::liesuper::{Element, Parity, SuperAlgebra};

/// Generators e, f, h attached to a root with [e, f] = h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyTriple {
    pub root: usize,
    pub e: Element,
    pub f: Element,
    pub h: Element,
}

/// n^- + h + n^+ for a base, with one Chevalley triple per simple root.
#[derive(Clone, Debug)]
pub struct TriangularDecomposition {
    pub base: Base,
    pub n_minus: Vec<Element>,
    pub cartan: Vec<Element>,
    pub n_plus: Vec<Element>,
    pub chevalley: Vec<ChevalleyTriple>,
    /// a_ij = alpha_j(h_i).
    pub cartan_matrix: Vec<Vec<CycScalar>>,
    /// Parity of each simple root.
    pub parities: Vec<Parity>,
}

/// The component of `v` along the basis index where `e` has its leading entry,
/// divided by that entry: the scalar c with v = c e when v is a multiple of e.
fn ratio_along(v: &Element, e: &Element) -> Option<CycScalar> {
    let (k, lead) = e.leading()?;
    let c = v.get(k).cloned().unwrap_or_else(|| CycScalar::zero(lead.conductor()));
    let c = c.checked_div(lead).ok()?;
    (v == &e.scaled(&c)).then_some(c)
}

/// Triple for `root`: e from its root space, f from the opposite one scaled so
/// that alpha(h) = 2 for even roots and 1 for odd roots whose double is a
/// root; for isotropic odd roots f is kept and h = [e, f].
pub fn root_triple(algebra: &SuperAlgebra, rs: &RootSystem, root: usize) -> Result<ChevalleyTriple> {
    let space = &rs.roots[root].space;
    let neg = rs.negative_of(root);
    if space.len() != 1 || rs.roots[neg].space.len() != 1 {
        return Err(Error::RootDecomposition("root space is not one-dimensional".into()));
    }
    let e = space[0].clone();
    let mut f = rs.roots[neg].space[0].clone();
    let h0 = algebra.bracket(&e, &f)?;
    let value = ratio_along(&algebra.bracket(&h0, &e)?, &e)
        .ok_or_else(|| Error::RootDecomposition("[h, e] is not a multiple of e".into()))?;
    let target = match rs.roots[root].parity {
        Parity::Even => Some(CycScalar::from_int(algebra.conductor(), 2)),
        Parity::Odd if rs.double_of(root).is_some() => Some(CycScalar::one(algebra.conductor())),
        Parity::Odd => None,
    };
    if let Some(t) = target {
        if value.is_zero() {
            return Err(Error::RootDecomposition("non-isotropic root pairs to zero".into()));
        }
        f = f.scaled(&t.checked_div(&value)?);
    }
    let h = algebra.bracket(&e, &f)?;
    Ok(ChevalleyTriple { root, e, f, h })
}

/// Coroot h_alpha of an even root, normalized by alpha(h_alpha) = 2.
pub fn coroot(algebra: &SuperAlgebra, rs: &RootSystem, root: usize) -> Result<Element> {
    if rs.roots[root].parity.is_odd() {
        return Err(Error::Invalid("coroot requested for an odd root".into()));
    }
    Ok(root_triple(algebra, rs, root)?.h)
}

/// The triangular decomposition induced by `base`.
pub fn triangular_decomposition(
    algebra: &SuperAlgebra,
    rs: &RootSystem,
    base: &Base,
) -> Result<TriangularDecomposition> {
    if base.positive.len() != rs.len() {
        return Err(Error::NotABase("base belongs to a different root system".into()));
    }
    let checked = rs.base_from_positive(&base.positive)?;
    let mut sorted_a = checked.simple.clone();
    let mut sorted_b = base.simple.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Err(Error::NotABase("simple roots do not match the positive system".into()));
    }
    let mut n_plus = Vec::new();
    let mut n_minus = Vec::new();
    for (i, r) in rs.roots.iter().enumerate() {
        if base.positive[i] {
            n_plus.extend(r.space.iter().cloned());
        } else {
            n_minus.extend(r.space.iter().cloned());
        }
    }
    let chevalley = base.simple.iter().map(|&s| root_triple(algebra, rs, s)).collect::<Result<Vec<_>>>()?;
    let mut cartan_matrix = Vec::with_capacity(chevalley.len());
    for t in &chevalley {
        let row = base.simple.iter().map(|&j| rs.evaluate(&rs.roots[j].values, &t.h)).collect::<Result<Vec<_>>>()?;
        cartan_matrix.push(row);
    }
    let parities = base.simple.iter().map(|&s| rs.roots[s].parity).collect();
    Ok(TriangularDecomposition {
        base: base.clone(),
        n_minus,
        cartan: rs.cartan.clone(),
        n_plus,
        chevalley,
        cartan_matrix,
        parities,
    })
}

impl TriangularDecomposition {
    pub fn rank(&self) -> usize {
        self.chevalley.len()
    }

    /// Dimension identity and pairwise independence of n^-, h, n^+.
    pub fn is_direct_sum(&self, dim: usize) -> bool {
        let mut span = Echelon::new();
        let all = self.n_minus.iter().chain(&self.cartan).chain(&self.n_plus);
        let count = all.clone().count();
        let independent = all.filter(|v| span.insert(v)).count();
        count == dim && independent == dim
    }

    /// The Cartan matrix with small integer entries rendered as text rows.
    pub fn cartan_matrix_text(&self) -> String {
        self.cartan_matrix
            .iter()
            .map(|row| row.iter().map(CycScalar::to_compact_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Type of a distinguished Z-grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingType {
    /// Components in degrees -1, 0, 1 with the even part in degree 0.
    One,
    /// Components in degrees -2..2 with the even part in even degrees.
    Two,
}

impl fmt::Display for GradingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradingType::One => "I",
            GradingType::Two => "II",
        })
    }
}

/// Z-grading by the coefficient of the odd simple root.
#[derive(Clone, Debug)]
pub struct ZGrading {
    pub odd_simple: usize,
    pub components: BTreeMap<i64, Vec<Element>>,
    /// Degree of each root.
    pub degrees: Vec<i64>,
    pub kind: GradingType,
}

impl ZGrading {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.components.iter().map(|(&k, v)| (k, v.len())).collect()
    }
}

/// Grades each root space by the coefficient of the unique odd simple root of
/// a distinguished base and classifies the grading.
pub fn z_grading(rs: &RootSystem, base: &Base) -> Result<ZGrading> {
    let odd = base.odd_simple(&rs.roots);
    if odd.len() != 1 {
        return Err(Error::NotABase(format!("base has {} odd simple roots", odd.len())));
    }
    let slot = base.simple.iter().position(|&s| s == odd[0]).expect("odd simple root is simple");
    let mut components: BTreeMap<i64, Vec<Element>> = BTreeMap::new();
    components.entry(0).or_default().extend(rs.cartan.iter().cloned());
    let mut degrees = Vec::with_capacity(rs.len());
    let mut shape_one = true;
    let mut shape_two = true;
    for (i, r) in rs.roots.iter().enumerate() {
        let d = base.coefficients[i][slot];
        degrees.push(d);
        components.entry(d).or_default().extend(r.space.iter().cloned());
        let parity_fits = (d.rem_euclid(2) == 1) == r.parity.is_odd();
        shape_one &= d.abs() <= 1 && parity_fits;
        shape_two &= d.abs() <= 2 && parity_fits;
    }
    let kind = if shape_one {
        GradingType::One
    } else if shape_two {
        GradingType::Two
    } else {
        return Err(Error::Invalid(format!("grading degrees {:?} match neither type", degrees)));
    };
    Ok(ZGrading { odd_simple: odd[0], components, degrees, kind })
}
