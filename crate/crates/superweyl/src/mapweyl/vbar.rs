use std::collections::{BTreeMap, HashMap};

use super::eqmap::{Folding, GeneratorKind, MapGenerator};
use super::module::RepModule;
use super::pbw::{normal_form_by_rewriting, EnvElement, Monomial};
use super::weyl::{power_relations, BasisVector, Certificate, WeylModule};
use crate::error::{Error, Result};
use crate::exactcore::{CycScalar, Echelon, SparseMatrix, SparseVec};
use crate::liesuper::{Element, SuperAlgebra};

/// The fixed algebra on a basis of root vectors: negative roots by
/// increasing depth, then the Cartan subalgebra, then positive roots by
/// increasing height.
fn ordered_fixed_algebra(folding: &Folding) -> Result<(SuperAlgebra, Vec<MapGenerator>)> {
    let rs = &folding.roots;
    let base = &folding.base;
    let mut negative: Vec<usize> = (0..rs.len()).filter(|&i| !base.positive[i]).collect();
    negative.sort_by_key(|&i| (-base.height(i), i));
    let mut positive: Vec<usize> = (0..rs.len()).filter(|&i| base.positive[i]).collect();
    positive.sort_by_key(|&i| (base.height(i), i));
    let mut vectors: Vec<Element> = Vec::new();
    let mut generators = Vec::new();
    let mut push = |v: &Element, kind: GeneratorKind, weight: Vec<i64>| {
        generators.push(MapGenerator {
            kind,
            element: folding.fixed.include(v),
            coefficient: 0,
            component: 0,
            weight,
            degree: 0,
        });
        vectors.push(v.clone());
    };
    for &i in &negative {
        for v in &rs.roots[i].space {
            push(v, GeneratorKind::Lowering, base.coefficients[i].clone());
        }
    }
    for h in &rs.cartan {
        push(h, GeneratorKind::Cartan, vec![0; folding.rank()]);
    }
    for &i in &positive {
        for v in &rs.roots[i].space {
            push(v, GeneratorKind::Raising, base.coefficients[i].clone());
        }
    }
    let name = folding.fixed.algebra.name().to_string();
    let sub = folding.fixed.algebra.induced(vectors, name)?;
    Ok((sub.algebra, generators))
}

/// Straightening of x u in U(g) by rewriting, then evaluation on the
/// generating vector: raising factors kill it and Cartan factors act by
/// their weight values.
struct Straightener<'a> {
    algebra: &'a SuperAlgebra,
    lowering: usize,
    cartan_values: Vec<Option<CycScalar>>,
    cap: usize,
    cache: HashMap<(usize, Monomial), EnvElement>,
}

impl Straightener<'_> {
    fn act(&mut self, x: usize, m: &[usize]) -> Result<EnvElement> {
        if let Some(hit) = self.cache.get(&(x, m.to_vec())) {
            return Ok(hit.clone());
        }
        let mut word = vec![x];
        word.extend_from_slice(m);
        let normal = normal_form_by_rewriting(self.algebra, &word, self.cap)?;
        let mut out = EnvElement::zero();
        'terms: for (mono, c) in normal.terms() {
            let split = mono.iter().position(|&y| y >= self.lowering).unwrap_or(mono.len());
            let mut coeff = c.clone();
            for &y in &mono[split..] {
                match &self.cartan_values[y - self.lowering] {
                    Some(v) => coeff = &coeff * v,
                    None => continue 'terms,
                }
            }
            out.add_term(mono[..split].to_vec(), &coeff);
        }
        self.cache.insert((x, m.to_vec()), out.clone());
        Ok(out)
    }

    fn act_vector(&mut self, x: usize, v: &EnvElement) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (m, c) in v.terms() {
            out.add_scaled(c, &self.act(x, m)?);
        }
        Ok(out)
    }
}

/// Normal monomials in the lowering letters, grouped by depth, with height
/// at most `limit`.
fn window_monomials(
    generators: &[MapGenerator],
    lowering: usize,
    odd: &[bool],
    limit: i64,
) -> BTreeMap<Vec<i64>, Vec<Monomial>> {
    let rank = generators.first().map_or(0, |g| g.weight.len());
    let mut out: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    let mut stack: Vec<(Monomial, Vec<i64>)> = vec![(Vec::new(), vec![0; rank])];
    while let Some((m, depth)) = stack.pop() {
        out.entry(depth.clone()).or_default().push(m.clone());
        let start = m.last().copied().unwrap_or(0);
        for i in start..lowering {
            if m.last() == Some(&i) && odd[i] {
                continue;
            }
            let next: Vec<i64> = depth.iter().zip(&generators[i].weight).map(|(d, w)| d - w).collect();
            if next.iter().sum::<i64>() <= limit {
                let mut word = m.clone();
                word.push(i);
                stack.push((word, next));
            }
        }
    }
    for list in out.values_mut() {
        list.sort();
    }
    out
}

struct Window {
    monomials: BTreeMap<Vec<i64>, Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
    relations: BTreeMap<Vec<i64>, Echelon>,
}

impl Window {
    fn coordinates(&self, e: &EnvElement) -> SparseVec {
        e.terms().map(|(m, c)| (self.index[m], c.clone())).collect()
    }

    fn quotient_dims_by_height(&self, limit: i64) -> Vec<usize> {
        let mut dims = vec![0; limit as usize + 1];
        for (depth, list) in &self.monomials {
            let rank = self.relations.get(depth).map_or(0, Echelon::rank);
            dims[depth.iter().sum::<i64>() as usize] += list.len() - rank;
        }
        dims
    }
}

/// Span of the submodule generated by the relations, restricted to depths of
/// height at most `limit`: closure under every generator, dropping
/// homogeneous images that leave the window.
fn saturate(
    straightener: &mut Straightener<'_>,
    generators: &[MapGenerator],
    relations: &[(Vec<i64>, EnvElement)],
    odd: &[bool],
    limit: i64,
) -> Result<Window> {
    let monomials = window_monomials(generators, straightener.lowering, odd, limit);
    let mut index = HashMap::new();
    for list in monomials.values() {
        for (i, m) in list.iter().enumerate() {
            index.insert(m.clone(), i);
        }
    }
    let mut window = Window { monomials, index, relations: BTreeMap::new() };
    let mut queue: Vec<(Vec<i64>, EnvElement)> = Vec::new();
    for (depth, e) in relations {
        if depth.iter().sum::<i64>() <= limit {
            let coords = window.coordinates(e);
            if window.relations.entry(depth.clone()).or_default().insert(&coords) {
                queue.push((depth.clone(), e.clone()));
            }
        }
    }
    while let Some((depth, v)) = queue.pop() {
        for (x, g) in generators.iter().enumerate() {
            let image = straightener.act_vector(x, &v)?;
            if image.is_zero() {
                continue;
            }
            let target: Vec<i64> = depth.iter().zip(&g.weight).map(|(d, w)| d - w).collect();
            if target.iter().any(|&d| d < 0) {
                return Err(Error::Invalid("raising operator leaves the weights of the module".into()));
            }
            if target.iter().sum::<i64>() > limit {
                continue;
            }
            let coords = window.coordinates(&image);
            if window.relations.entry(target.clone()).or_default().insert(&coords) {
                queue.push((target, image));
            }
        }
    }
    Ok(window)
}

/// The module over the fixed algebra generated by w with raising operators
/// killing w, the Cartan subalgebra acting by lambda and the power relations
/// for the even simple roots. Computed by saturating the relations inside
/// windows of growing height, straightening by rewriting; `cap` bounds the
/// window height.
pub fn build_vbar(folding: &Folding, lambda: &[i64], cap: usize) -> Result<WeylModule> {
    let (algebra, generators) = ordered_fixed_algebra(folding)?;
    let (weight, relations) = power_relations(folding, &generators, lambda)?;
    let lowering = generators.iter().filter(|g| g.kind == GeneratorKind::Lowering).count();
    let cartan_values = generators[lowering..]
        .iter()
        .map(|g| match g.kind {
            GeneratorKind::Cartan => folding.evaluate(&weight, &g.element).map(Some),
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    let odd: Vec<bool> = (0..algebra.dim()).map(|i| algebra.parity(i).is_odd()).collect();
    let step = generators[..lowering].iter().map(|g| -g.height()).max().unwrap_or(1).max(1);
    let conductor = algebra.conductor();
    let seeds: Vec<(Vec<i64>, EnvElement)> = relations
        .iter()
        .map(|r| {
            let depth = generators[r.generator].weight.iter().map(|w| -w * r.exponent as i64).collect();
            (depth, EnvElement::monomial(vec![r.generator; r.exponent], CycScalar::one(conductor)))
        })
        .collect();
    let deepest = seeds.iter().map(|(d, _)| d.iter().sum::<i64>()).max().unwrap_or(0);
    let mut straightener = Straightener {
        algebra: &algebra,
        lowering,
        cartan_values,
        cap: cap.max(deepest as usize) + 2,
        cache: HashMap::new(),
    };
    let mut limit = deepest.max(step);
    let (window, converged) = loop {
        let window = saturate(&mut straightener, &generators, &seeds, &odd, limit)?;
        let dims = window.quotient_dims_by_height(limit);
        if dims[0] == 0 {
            return Err(Error::InvalidWeight("the relations force the generating vector to vanish".into()));
        }
        if dims[(limit - step + 1) as usize..].iter().all(|&d| d == 0) {
            break (window, true);
        }
        if limit >= cap as i64 {
            break (window, false);
        }
        limit = (limit + step).min(cap as i64);
    };

    let mut basis = Vec::new();
    let mut position: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
    let mut ordered: Vec<(&Vec<i64>, &Vec<Monomial>)> = window.monomials.iter().collect();
    ordered.sort_by_key(|(d, _)| (d.iter().sum::<i64>(), (*d).clone()));
    let empty = Echelon::new();
    for (depth, list) in &ordered {
        let relations = window.relations.get(*depth).unwrap_or(&empty);
        let pivots: Vec<usize> = relations.pivots().collect();
        for (i, m) in list.iter().enumerate() {
            if !pivots.contains(&i) {
                position.insert(((*depth).clone(), i), basis.len());
                basis.push(BasisVector { depth: (*depth).clone(), degree: 0, monomial: m.clone() });
            }
        }
    }
    let dim = basis.len();
    let mut matrices = Vec::with_capacity(generators.len());
    for (x, g) in generators.iter().enumerate() {
        let mut matrix = SparseMatrix::zero(dim, dim, conductor);
        for (col, b) in basis.iter().enumerate() {
            let image = straightener.act(x, &b.monomial)?;
            if image.is_zero() {
                continue;
            }
            let target: Vec<i64> = b.depth.iter().zip(&g.weight).map(|(d, w)| d - w).collect();
            if target.iter().sum::<i64>() > limit {
                continue;
            }
            let coords = window.coordinates(&image);
            let reduced = window.relations.get(&target).map_or(coords.clone(), |r| r.reduce(&coords));
            for (s, c) in reduced.iter() {
                matrix.add_at(position[&(target.clone(), s)], col, c);
            }
        }
        matrices.push(matrix);
    }
    let module = RepModule::new(algebra, dim, matrices)?;
    let mut vbar = WeylModule {
        lambda: lambda.to_vec(),
        weight,
        generators,
        basis,
        module,
        power_relations: relations,
        certificate: Certificate { cap, reached: limit as usize, converged, closure_verified: false },
        folding: folding.clone(),
    };
    vbar.certificate.closure_verified = converged && vbar.verify_closure()?;
    Ok(vbar)
}
