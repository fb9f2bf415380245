use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eqmap::{EqMapAlgebra, GeneratorKind};
use super::gamma::GammaAlgebra;
use super::hwalgebra::{right_action, HighestWeightAlgebra};
use super::weyl::WeylModule;
use crate::classical::coroot;
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, Echelon, SpanSolver, SparseMatrix, SparseVec};
use crate::liesuper::Parity;

/// Expression of (f_alpha (x) a^p) w through the vectors
/// ((f_alpha (x) a^l) w) u for l below lambda(h_alpha) and u in A_lambda.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopReduction {
    pub root: usize,
    pub power: u32,
    /// lambda(h_alpha), the number of exponents l in the spanning set.
    pub bound: i64,
    pub target: SparseVec,
    /// Per exponent l, the coefficients over the basis of A_lambda; `None`
    /// when the target is outside the span.
    pub coefficients: Option<Vec<SparseVec>>,
}

impl LoopReduction {
    pub fn succeeded(&self) -> bool {
        self.coefficients.is_some()
    }
}

/// Generator index of f_alpha (x) a^p for f_alpha in the fixed root space;
/// `None` when a^p vanishes.
fn loop_lowering(eq: &EqMapAlgebra, weyl: &WeylModule, root: usize, power: u32) -> Result<Option<usize>> {
    let coefficients = &eq.coefficients;
    let index = match (loop_parameter(coefficients), power) {
        (_, 0) => Some(coefficients.unit),
        (Some(a), p) => coefficients.power(a, p),
        (None, _) => None,
    };
    let Some(index) = index else {
        return Ok(None);
    };
    let unit_generator =
        weyl.root_lowering(root).ok_or_else(|| Error::Invalid(format!("no lowering generator for root {root}")))?;
    let element = &eq.generators[unit_generator].element;
    eq.find(element, index)
        .map(|(i, c)| if c.is_one() { Ok(Some(i)) } else { Err(Error::Invalid("loop generator is rescaled".into())) })
        .unwrap_or_else(|| Err(Error::Invalid("missing loop lowering generator".into())))
}

/// The element a driving the loop reductions: t for the trivial group and
/// the invariant t^m otherwise.
pub fn loop_parameter(coefficients: &GammaAlgebra) -> Option<usize> {
    if coefficients.order == 1 {
        coefficients
            .component(0)
            .into_iter()
            .filter(|&j| j != coefficients.unit)
            .min_by_key(|&j| coefficients.degrees[j])
    } else {
        coefficients.invariant_generator()
    }
}

/// Solves for (f_alpha (x) a^p) w in the span of ((f_alpha (x) a^l) w) u,
/// 0 <= l < lambda(h_alpha), u over A_lambda, with a = t for the trivial
/// group and a = t^m otherwise.
pub fn reduce_loop_vector(
    eq: &EqMapAlgebra,
    weyl: &WeylModule,
    algebra: &HighestWeightAlgebra,
    root: usize,
    power: u32,
) -> Result<LoopReduction> {
    if !weyl.certificate.converged {
        return Err(Error::NotConverged("the Weyl module did not converge".into()));
    }
    if !weyl.folding.base.positive[root] || weyl.folding.roots.roots[root].parity != Parity::Even {
        return Err(Error::Invalid("the root must be positive and even".into()));
    }
    let bound = weyl.coroot_value(root)?;
    let w = weyl.highest_weight_vector();
    let target = match loop_lowering(eq, weyl, root, power)? {
        Some(g) => weyl.module.act_basis(g, &w),
        None => SparseVec::new(),
    };
    let conductor = weyl.module.conductor();
    let rights = (0..algebra.dim()).map(|a| right_action(weyl, algebra, a)).collect::<Result<Vec<_>>>()?;
    let mut solver = SpanSolver::new(conductor);
    let mut slots = Vec::new();
    for l in 0..bound.max(0) as u32 {
        let base = match loop_lowering(eq, weyl, root, l)? {
            Some(g) => weyl.module.act_basis(g, &w),
            None => SparseVec::new(),
        };
        for (a, right) in rights.iter().enumerate() {
            solver.push(&right.mul_vec(&base)?);
            slots.push((l as usize, a));
        }
    }
    let coefficients = if target.is_zero() {
        Some(vec![SparseVec::new(); bound.max(0) as usize])
    } else {
        solver.coordinates(&target).map(|c| {
            let mut out = vec![SparseVec::new(); bound.max(0) as usize];
            for (k, x) in c.iter() {
                let (l, a) = slots[k];
                out[l].add_at(a, x);
            }
            out
        })
    };
    Ok(LoopReduction { root, power, bound, target, coefficients })
}

/// Whether (f_alpha (x) a) w = (f_alpha (x) 1)(h_alpha (x) a) w holds in the
/// module for a = [`loop_parameter`], with h_alpha the coroot normalized by
/// alpha(h_alpha) = 2.
pub fn check_first_loop_identity(eq: &EqMapAlgebra, weyl: &WeylModule, root: usize) -> Result<bool> {
    let folding = &weyl.folding;
    let t = loop_parameter(&eq.coefficients)
        .ok_or_else(|| Error::Invalid("the coefficient algebra has no loop direction".into()))?;
    let f = weyl.root_lowering(root).ok_or_else(|| Error::Invalid("missing lowering generator".into()))?;
    let f_t = loop_lowering(eq, weyl, root, 1)?.ok_or_else(|| Error::Invalid("missing loop generator".into()))?;
    let h = folding.fixed.include(&coroot(&folding.fixed.algebra, &folding.roots, root)?);
    let (h_t, scale) = eq.find(&h, t).ok_or_else(|| Error::Invalid("missing loop Cartan generator".into()))?;
    let w = weyl.highest_weight_vector();
    let left = weyl.module.act_basis(f_t, &w);
    let right = weyl.module.act_basis(f, &weyl.module.act_basis(h_t, &w)).scaled(&scale);
    Ok(left == right)
}

/// Dimensions of U_n((n^- (x) A)^Gamma) w A_lambda for n = 0, 1, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub dims: Vec<usize>,
    /// First n from which the table is constant.
    pub stable_from: usize,
    /// Stabilized within the cap and at the dimension of W.
    pub certified: bool,
}

/// S_0 = W_lambda and S_n = S_{n-1} + sum over lowering generators x of
/// x S_{n-1}, until the sequence stops growing.
pub fn filtration_stabilization(weyl: &WeylModule, cap: usize) -> Result<Filtration> {
    if !weyl.certificate.converged {
        return Err(Error::NotConverged("the Weyl module did not converge".into()));
    }
    let conductor = weyl.module.conductor();
    let lowering = weyl.of_kind(GeneratorKind::Lowering);
    let mut span = Echelon::new();
    let mut frontier: Vec<SparseVec> = Vec::new();
    for i in weyl.highest_weight_space() {
        let v = SparseVec::unit(i, CycScalar::one(conductor));
        if span.insert(&v) {
            frontier.push(v);
        }
    }
    let mut dims = vec![span.rank()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for &x in &lowering {
                let image = weyl.module.act_basis(x, v);
                if span.insert(&image) {
                    next.push(image);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        dims.push(span.rank());
        frontier = next;
    }
    let stable_from = dims.len() - 1;
    let certified = stable_from <= cap && dims[stable_from] == weyl.dim();
    Ok(Filtration { dims, stable_from, certified })
}

/// A module with a distinguished vector and one action matrix per generator
/// of the Weyl module's acting algebra.
#[derive(Clone, Debug)]
pub struct CyclicCandidate {
    pub dim: usize,
    pub actions: Vec<SparseMatrix>,
    pub vector: SparseVec,
}

/// Outcome of matching W onto a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectionVerdict {
    pub homomorphism: bool,
    pub surjective: bool,
    pub kernel_dim: usize,
}

impl SurjectionVerdict {
    pub fn holds(&self) -> bool {
        self.homomorphism && self.surjective
    }
}

/// The map u w -> u v, checked to intertwine every generator on every basis
/// vector and to be onto. The candidate vector must be a highest weight
/// vector of weight lambda.
pub fn check_universal_surjection(weyl: &WeylModule, candidate: &CyclicCandidate) -> Result<SurjectionVerdict> {
    if candidate.actions.len() != weyl.generators.len() {
        return Err(Error::Dimension("candidate acts by a different number of generators".into()));
    }
    let v = &candidate.vector;
    for (i, g) in weyl.generators.iter().enumerate() {
        let image = candidate.actions[i].mul_vec(v)?;
        let expected = match g.kind {
            GeneratorKind::Raising => SparseVec::new(),
            GeneratorKind::Cartan => v.scaled(&weyl.folding.evaluate(&weyl.weight, &g.element)?),
            _ => continue,
        };
        if image != expected {
            return Err(Error::Invalid("candidate vector is not a highest weight vector of weight lambda".into()));
        }
    }
    let images: Vec<SparseVec> = weyl
        .basis
        .iter()
        .map(|b| b.monomial.iter().rev().try_fold(v.clone(), |acc, &x| candidate.actions[x].mul_vec(&acc)))
        .collect::<Result<_>>()?;
    let phi = SparseMatrix::from_columns(candidate.dim, weyl.module.conductor(), &images)?;
    let mut homomorphism = true;
    'outer: for (x, rho) in weyl.module.matrices.iter().enumerate() {
        for (col, image) in images.iter().enumerate() {
            if phi.mul_vec(&rho.column(col))? != candidate.actions[x].mul_vec(image)? {
                homomorphism = false;
                break 'outer;
            }
        }
    }
    let rank = crate::exactcore::rank(&phi)?;
    Ok(SurjectionVerdict { homomorphism, surjective: rank == candidate.dim, kernel_dim: weyl.dim() - rank })
}

/// W itself as a candidate.
pub fn identity_candidate(weyl: &WeylModule) -> CyclicCandidate {
    CyclicCandidate { dim: weyl.dim(), actions: weyl.module.matrices.clone(), vector: weyl.highest_weight_vector() }
}

/// Quotient of W by the submodule generated by randomly chosen basis
/// vectors below the top, retried until the submodule is nonzero and proper.
pub fn random_quotient(weyl: &WeylModule, seed: u64, attempts: usize) -> Result<CyclicCandidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conductor = weyl.module.conductor();
    let pool: Vec<usize> = (1..weyl.dim()).collect();
    for _ in 0..attempts {
        let count = 1 + (pool.len().min(2));
        let chosen: Vec<SparseVec> = pool
            .choose_multiple(&mut rng, count.min(pool.len()))
            .map(|&i| SparseVec::unit(i, CycScalar::one(conductor)))
            .collect();
        if chosen.is_empty() {
            break;
        }
        let submodule = weyl.module.submodule(&chosen);
        if submodule.rank() == 0 || submodule.rank() == weyl.dim() {
            continue;
        }
        let w = weyl.highest_weight_vector();
        if submodule.contains(&w) {
            continue;
        }
        let (quotient, kept) = weyl.module.quotient(&submodule)?;
        let position = |i: usize| kept.binary_search(&i).ok();
        let vector = submodule.reduce(&w).remap(position);
        return Ok(CyclicCandidate { dim: quotient.dim, actions: quotient.matrices, vector });
    }
    Err(Error::Invalid("no proper nonzero submodule found".into()))
}

/// A module over the fixed algebra seen through the map algebra with
/// scalar coefficients: each generator acts through its element of the
/// fixed algebra.
pub fn evaluation_candidate(weyl: &WeylModule, target: &WeylModule) -> Result<CyclicCandidate> {
    let conductor = target.module.conductor();
    let elements: Vec<SparseVec> = target.generators.iter().map(|g| g.element.clone()).collect();
    let solver = SpanSolver::from_vectors(conductor, &elements);
    let actions = weyl
        .generators
        .iter()
        .map(|g| {
            if g.degree > 0 {
                return Err(Error::Invalid("evaluation needs scalar coefficients".into()));
            }
            let coords = solver
                .coordinates(&g.element)
                .ok_or_else(|| Error::Invalid("generator is outside the fixed algebra".into()))?;
            Ok(target.module.matrix_of(&coords))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CyclicCandidate { dim: target.dim(), actions, vector: target.highest_weight_vector() })
}
