use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::eqmap::{EqMapAlgebra, Folding, GeneratorKind, MapGenerator};
use super::module::RepModule;
use super::pbw::{render_monomial, EnvElement, Envelope, Monomial, Quotient};
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, Echelon, SparseMatrix, SparseVec};
use crate::liesuper::Parity;

/// Default bound on the graded degree explored by the module builders.
pub const DEFAULT_CAP: usize = 8;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "SUPERWEYL_CAP";

/// The cap from the environment, or the default.
pub fn default_cap() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&c| c > 0).unwrap_or(DEFAULT_CAP)
}

/// How far a module computation went and what was verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub cap: usize,
    /// Largest graded degree that was processed.
    pub reached: usize,
    pub converged: bool,
    /// Bracket relations of the action matrices on every pair, raising
    /// generators killing the generating vector, the Cartan part acting by
    /// the highest weight, and the imposed power relations.
    pub closure_verified: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cap {}", self.cap)?;
        writeln!(f, "reached {}", self.reached)?;
        writeln!(f, "converged {}", self.converged)?;
        writeln!(f, "closure_verified {}", self.closure_verified)
    }
}

/// A power relation f^exponent w = 0 imposed for an even simple root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerRelation {
    /// Root index in the fixed algebra's root system.
    pub root: usize,
    /// Generator index of the lowering operator f.
    pub generator: usize,
    pub exponent: usize,
}

/// A basis vector u w of a cyclic module, u a standard monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    /// lambda minus the weight, over the simple roots.
    pub depth: Vec<i64>,
    /// Total degree of the coefficients.
    pub degree: u32,
    pub monomial: Monomial,
}

/// A finite-dimensional cyclic highest-weight module with its action
/// matrices. The generating vector w is basis vector 0.
#[derive(Clone, Debug)]
pub struct WeylModule {
    /// Values of the highest weight on the Chevalley coroots h_i.
    pub lambda: Vec<i64>,
    /// Values of the highest weight on the fixed Cartan basis.
    pub weight: Vec<CycScalar>,
    pub generators: Vec<MapGenerator>,
    pub basis: Vec<BasisVector>,
    pub module: RepModule,
    pub power_relations: Vec<PowerRelation>,
    pub certificate: Certificate,
    pub folding: Folding,
}

/// Weight character, keyed by the depth lambda - mu over the simple roots.
pub type Character = BTreeMap<Vec<i64>, usize>;

impl WeylModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.module.algebra.dim()).map(|i| self.module.algebra.label(i).to_string()).collect()
    }

    pub fn character(&self) -> Character {
        let mut out = Character::new();
        for b in &self.basis {
            *out.entry(b.depth.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Indices of the basis of the lambda-weight space.
    pub fn highest_weight_space(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].depth.iter().all(|&d| d == 0)).collect()
    }

    pub fn highest_weight_vector(&self) -> SparseVec {
        SparseVec::unit(0, CycScalar::one(self.module.conductor()))
    }

    pub fn of_kind(&self, kind: GeneratorKind) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].kind == kind).collect()
    }

    pub fn describe_vector(&self, i: usize) -> String {
        let m = &self.basis[i].monomial;
        if m.is_empty() {
            "w".into()
        } else {
            format!("{} w", render_monomial(m, &self.labels()))
        }
    }

    /// Values mu(h_i) on the Chevalley coroots of a weight lambda - depth.
    pub fn weight_values(&self, depth: &[i64]) -> Vec<CycScalar> {
        self.folding.coroot_values(&self.lambda, depth)
    }

    /// Character as text lines "mu(h_1),...,mu(h_r) : dim", highest first.
    pub fn character_text(&self) -> String {
        let mut out = String::new();
        let mut rows: Vec<(Vec<i64>, usize)> = self.character().into_iter().collect();
        rows.sort_by_key(|(d, _)| (d.iter().sum::<i64>(), d.clone()));
        for (depth, dim) in rows {
            let values: Vec<String> = self.weight_values(&depth).iter().map(CycScalar::to_compact_string).collect();
            out.push_str(&format!("[{}] : {}\n", values.join(","), dim));
        }
        out
    }

    /// The lowering operator f_alpha (x) 1 for a root of the fixed algebra.
    pub fn root_lowering(&self, root: usize) -> Option<usize> {
        let coefficients: Vec<i64> = self.folding.base.coefficients[root].iter().map(|c| -c).collect();
        let hits: Vec<usize> = (0..self.generators.len())
            .filter(|&i| {
                let g = &self.generators[i];
                g.weight == coefficients && g.degree == 0 && g.component == 0
            })
            .collect();
        (hits.len() == 1).then(|| hits[0])
    }

    /// lambda(h_alpha) for an even root of the fixed algebra.
    pub fn coroot_value(&self, root: usize) -> Result<i64> {
        let v = self.folding.coroot_value(&self.weight, root)?;
        v.as_integer().ok_or_else(|| Error::InvalidWeight(format!("lambda(h_alpha) = {v} is not an integer")))
    }

    /// For every positive even root alpha, whether
    /// (f_alpha)^{lambda(h_alpha)+1} w = 0 in the module.
    pub fn verify_root_powers(&self) -> Result<Vec<(usize, i64, bool)>> {
        let mut out = Vec::new();
        for root in 0..self.folding.roots.len() {
            if !self.folding.base.positive[root] || self.folding.roots.roots[root].parity != Parity::Even {
                continue;
            }
            let exponent = self.coroot_value(root)?;
            if exponent < 0 {
                return Err(Error::InvalidWeight(format!("lambda(h_alpha) = {exponent} is negative")));
            }
            let generator = self
                .root_lowering(root)
                .ok_or_else(|| Error::Invalid(format!("no lowering generator for root {root}")))?;
            let mut v = self.highest_weight_vector();
            for _ in 0..=exponent {
                v = self.module.act_basis(generator, &v);
            }
            out.push((root, exponent, v.is_zero()));
        }
        Ok(out)
    }

    /// Whether raising generators kill w and Cartan generators act on it by
    /// the highest weight.
    fn highest_weight_conditions(&self) -> Result<bool> {
        let w = self.highest_weight_vector();
        for (i, g) in self.generators.iter().enumerate() {
            let image = self.module.act_basis(i, &w);
            match g.kind {
                GeneratorKind::Raising => {
                    if !image.is_zero() {
                        return Ok(false);
                    }
                }
                GeneratorKind::Cartan => {
                    let value = self.folding.evaluate(&self.weight, &g.element)?;
                    if image != w.scaled(&value) {
                        return Ok(false);
                    }
                }
                _ => {}
            }
        }
        Ok(true)
    }

    pub(crate) fn verify_closure(&self) -> Result<bool> {
        if !self.module.bracket_failures()?.is_empty() || !self.highest_weight_conditions()? {
            return Ok(false);
        }
        for r in &self.power_relations {
            let mut v = self.highest_weight_vector();
            for _ in 0..r.exponent {
                v = self.module.act_basis(r.generator, &v);
            }
            if !v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The highest weight on the fixed Cartan basis and the power relations for
/// the even simple roots, checking the integrality conditions.
pub(crate) fn power_relations(
    folding: &Folding,
    generators: &[MapGenerator],
    lambda: &[i64],
) -> Result<(Vec<CycScalar>, Vec<PowerRelation>)> {
    let weight = folding.weight_from_coroot_values(lambda)?;
    let mut relations = Vec::new();
    for root in folding.even_simple_roots() {
        let value = folding.coroot_value(&weight, root)?;
        let exponent = value
            .as_integer()
            .filter(|&n| n >= 0)
            .ok_or_else(|| Error::InvalidWeight(format!("lambda(h_alpha) = {value} is not a nonnegative integer")))?;
        let target: Vec<i64> = folding.base.coefficients[root].iter().map(|c| -c).collect();
        let generator = generators
            .iter()
            .position(|g| g.weight == target && g.degree == 0 && g.component == 0)
            .ok_or_else(|| Error::Invalid(format!("no lowering generator for even simple root {root}")))?;
        relations.push(PowerRelation { root, generator, exponent: exponent as usize + 1 });
    }
    Ok((weight, relations))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct BlockKey {
    depth: Vec<i64>,
    degree: u32,
}

impl BlockKey {
    fn total(&self) -> i64 {
        self.depth.iter().sum::<i64>() + self.degree as i64
    }

    /// Shift by a generator's (depth, degree); `None` when a depth turns
    /// negative.
    fn shifted(&self, g: &MapGenerator) -> Option<BlockKey> {
        let depth: Vec<i64> = self.depth.iter().zip(&g.weight).map(|(d, w)| d - w).collect();
        depth.iter().all(|&d| d >= 0).then(|| BlockKey { depth, degree: self.degree + g.degree })
    }

    fn unshifted(&self, g: &MapGenerator) -> Option<BlockKey> {
        let depth: Vec<i64> = self.depth.iter().zip(&g.weight).map(|(d, w)| d + w).collect();
        (depth.iter().all(|&d| d >= 0) && self.degree >= g.degree)
            .then(|| BlockKey { depth, degree: self.degree - g.degree })
    }
}

#[derive(Clone, Debug, Default)]
struct Block {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Echelon,
    standard: Vec<usize>,
}

impl Block {
    fn coordinates(&self, e: &EnvElement) -> Result<SparseVec> {
        e.terms()
            .map(|(m, c)| {
                self.index
                    .get(m)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::Invalid("product leaves its weight block".into()))
            })
            .collect()
    }
}

/// Independent spanning set of a subspace of M, grouped by block, with a
/// growing monomial index per block.
#[derive(Default)]
struct BlockSpans {
    spans: BTreeMap<BlockKey, BlockSpan>,
}

/// Monomial index, echelon form of the chosen vectors, and the vectors.
type BlockSpan = (HashMap<Monomial, usize>, Echelon, Vec<EnvElement>);

impl BlockSpans {
    fn insert(&mut self, key: BlockKey, e: EnvElement) -> bool {
        let (index, echelon, members) = self.spans.entry(key).or_default();
        let coords: SparseVec = e
            .terms()
            .map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        if echelon.insert(&coords) {
            members.push(e);
            true
        } else {
            false
        }
    }
}

/// The global Weyl module of the equivariant map algebra for the highest
/// weight with the given values on the Chevalley coroots h_i, computed as
/// the quotient of M = U / U(Cartan - lambda, raising) by the submodule
/// generated by the power relations, degree by degree up to `cap`.
///
/// The grading puts a generator x (x) t^j of weight -beta in degree
/// height(beta) + j. Convergence means the quotient vanishes on a run of
/// consecutive degrees as long as the largest generator degree, after which
/// it vanishes in all higher degrees. A non-converged result is a truncation
/// and its certificate says so.
pub fn build_global_weyl(eq: &EqMapAlgebra, lambda: &[i64], cap: usize) -> Result<WeylModule> {
    let folding = &eq.folding;
    let (weight, relations) = power_relations(folding, &eq.generators, lambda)?;
    let cutoff = eq.cutoff();
    let values = eq.generators[cutoff..]
        .iter()
        .map(|g| match g.kind {
            GeneratorKind::Cartan => folding.evaluate(&weight, &g.element).map(Some),
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    let longest = relations.iter().map(|r| r.exponent).max().unwrap_or(0);
    let mut engine = Envelope::module(eq.algebra.clone(), cap.max(longest) + 1, Quotient { cutoff, values })?;
    let generators = &eq.generators;
    let lowering = &generators[..cutoff];
    let total = |g: &MapGenerator| g.degree as i64 - g.height();
    let window = lowering.iter().map(total).max().unwrap_or(1).max(1) as usize;
    let conductor = eq.algebra.conductor();

    // Raising closure of the power relations inside M.
    let mut seeds = BlockSpans::default();
    let root_key = BlockKey { depth: vec![0; folding.rank()], degree: 0 };
    let mut queue = Vec::new();
    for r in &relations {
        let e = EnvElement::monomial(vec![r.generator; r.exponent], CycScalar::one(conductor));
        let mut key = root_key.clone();
        for _ in 0..r.exponent {
            key = key.shifted(&generators[r.generator]).expect("lowering generator");
        }
        if seeds.insert(key.clone(), e.clone()) {
            queue.push((key, e));
        }
    }
    let raising: Vec<usize> =
        (cutoff..generators.len()).filter(|&i| generators[i].kind == GeneratorKind::Raising).collect();
    while let Some((key, e)) = queue.pop() {
        for &x in &raising {
            let image = engine.left_mul_element(x, &e)?;
            if image.is_zero() {
                continue;
            }
            let target = key
                .shifted(&generators[x])
                .ok_or_else(|| Error::Invalid("raising operator leaves the weights of M".into()))?;
            if seeds.insert(target.clone(), image.clone()) {
                queue.push((target, image));
            }
        }
    }

    // Degree-by-degree quotient.
    let mut blocks: BTreeMap<BlockKey, Block> = BTreeMap::new();
    let mut by_total: Vec<Vec<BlockKey>> = Vec::new();
    let mut dims_by_total: Vec<usize> = Vec::new();
    let mut converged = false;
    let mut reached = 0;
    for k in 0..=cap {
        reached = k;
        let mut keys = BTreeSet::new();
        if k == 0 {
            keys.insert(root_key.clone());
        } else {
            for g in lowering {
                let t = total(g) as usize;
                if t <= k {
                    for prev in &by_total[k - t] {
                        if let Some(next) = prev.shifted(g) {
                            keys.insert(next);
                        }
                    }
                }
            }
        }
        let mut quotient_dim = 0;
        for key in &keys {
            let mut block = Block::default();
            if k == 0 {
                block.monomials.push(Vec::new());
            } else {
                for (i, g) in lowering.iter().enumerate() {
                    let Some(prev) = key.unshifted(g).and_then(|p| blocks.get(&p)) else {
                        continue;
                    };
                    let even = !eq.algebra.parity(i).is_odd();
                    for m in &prev.monomials {
                        if m.first().is_none_or(|&first| i < first || (i == first && even)) {
                            let mut word = Vec::with_capacity(m.len() + 1);
                            word.push(i);
                            word.extend_from_slice(m);
                            block.monomials.push(word);
                        }
                    }
                }
            }
            block.index = block.monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            if let Some((_, _, members)) = seeds.spans.get(key) {
                for e in members {
                    let coords = block.coordinates(e)?;
                    block.relations.insert(&coords);
                }
            }
            for (i, g) in lowering.iter().enumerate() {
                let Some(prev) = key.unshifted(g).and_then(|p| blocks.get(&p)) else {
                    continue;
                };
                for row in prev.relations.basis() {
                    let mut image = EnvElement::zero();
                    for (col, c) in row.iter() {
                        image.add_scaled(c, &engine.left_mul(i, &prev.monomials[col])?);
                    }
                    let coords = block.coordinates(&image)?;
                    block.relations.insert(&coords);
                }
            }
            let pivots: BTreeSet<usize> = block.relations.pivots().collect();
            block.standard = (0..block.monomials.len()).filter(|i| !pivots.contains(i)).collect();
            quotient_dim += block.standard.len();
            blocks.insert(key.clone(), block);
        }
        if k == 0 && quotient_dim == 0 {
            return Err(Error::InvalidWeight("the relations force the generating vector to vanish".into()));
        }
        by_total.push(keys.into_iter().collect());
        dims_by_total.push(quotient_dim);
        if k >= window && dims_by_total[k + 1 - window..=k].iter().all(|&d| d == 0) {
            converged = true;
            break;
        }
    }

    // Basis and action matrices.
    let mut basis = Vec::new();
    let mut position: HashMap<(BlockKey, usize), usize> = HashMap::new();
    for keys in &by_total {
        for key in keys {
            for &s in &blocks[key].standard {
                position.insert((key.clone(), s), basis.len());
                basis.push(BasisVector {
                    depth: key.depth.clone(),
                    degree: key.degree,
                    monomial: blocks[key].monomials[s].clone(),
                });
            }
        }
    }
    let dim = basis.len();
    let mut matrices = Vec::with_capacity(generators.len());
    for (x, g) in generators.iter().enumerate() {
        let mut matrix = SparseMatrix::zero(dim, dim, conductor);
        for (col, b) in basis.iter().enumerate() {
            let image = engine.left_mul(x, &b.monomial)?;
            if image.is_zero() {
                continue;
            }
            let source = BlockKey { depth: b.depth.clone(), degree: b.degree };
            let target = source.shifted(g).ok_or_else(|| Error::Invalid("generator leaves the weights of M".into()))?;
            let Some(block) = blocks.get(&target) else {
                if target.total() as usize > reached {
                    continue;
                }
                return Err(Error::Invalid("missing weight block".into()));
            };
            let reduced = block.relations.reduce(&block.coordinates(&image)?);
            for (s, c) in reduced.iter() {
                matrix.add_at(position[&(target.clone(), s)], col, c);
            }
        }
        matrices.push(matrix);
    }
    let module = RepModule::new(eq.algebra.clone(), dim, matrices)?;
    let mut weyl = WeylModule {
        lambda: lambda.to_vec(),
        weight,
        generators: generators.clone(),
        basis,
        module,
        power_relations: relations,
        certificate: Certificate { cap, reached, converged, closure_verified: false },
        folding: folding.clone(),
    };
    weyl.certificate.closure_verified = converged && weyl.verify_closure()?;
    Ok(weyl)
}
