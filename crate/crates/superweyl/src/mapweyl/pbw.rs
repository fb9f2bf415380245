use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactcore::{ratio, CycScalar};
use crate::liesuper::{Element, SuperAlgebra};

/// A PBW monomial: a nondecreasing list of generator indices in which odd
/// generators occur at most once.
pub type Monomial = Vec<usize>;

/// A finite linear combination of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvElement {
    terms: BTreeMap<Monomial, CycScalar>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement { terms: BTreeMap::new() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::monomial(Vec::new(), CycScalar::one(conductor))
    }

    pub fn monomial(m: Monomial, c: CycScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &CycScalar, other: &EnvElement) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), &(c * d));
        }
    }

    pub fn scaled(&self, c: &CycScalar) -> EnvElement {
        let mut out = EnvElement::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn plus(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycScalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[usize]) -> Option<&CycScalar> {
        self.terms.get(m)
    }

    /// Largest monomial length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Renders with generator labels, e.g. "1/2 f^2 e".
    pub fn render(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let word = render_monomial(m, labels);
                if word.is_empty() {
                    c.to_compact_string()
                } else if c.is_one() {
                    word
                } else {
                    format!("{} {word}", c.to_compact_string())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// "f^2 e" style rendering with repeated generators collected.
pub fn render_monomial(m: &[usize], labels: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let mut run = 1;
        while k + run < m.len() && m[k + run] == m[k] {
            run += 1;
        }
        let name = labels.get(m[k]).cloned().unwrap_or_else(|| format!("x{}", m[k]));
        parts.push(match run {
            1 => name,
            _ if name.contains(['^', '*']) => format!("({name})^{run}"),
            _ => format!("{name}^{run}"),
        });
        k += run;
    }
    parts.join(" ")
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Quotient of U by the left ideal generated by x - c(x) for generators
/// x >= cutoff: generators mapped to `Some(c)` act by that scalar on the
/// generating vector and generators mapped to `None` kill it. Normal forms
/// then only involve generators below the cutoff.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub cutoff: usize,
    pub values: Vec<Option<CycScalar>>,
}

/// Normal ordering in the enveloping algebra of an algebra whose basis order
/// is the generator order, by memoized left multiplication onto normal
/// monomials.
#[derive(Clone, Debug)]
pub struct Envelope {
    algebra: SuperAlgebra,
    cap: usize,
    quotient: Option<Quotient>,
    half: CycScalar,
    memo: HashMap<(usize, Monomial), EnvElement>,
}

impl Envelope {
    pub fn new(algebra: SuperAlgebra, cap: usize) -> Self {
        let half = CycScalar::from_rational(algebra.conductor(), ratio(1, 2));
        Envelope { algebra, cap, quotient: None, half, memo: HashMap::new() }
    }

    /// Engine for the induced module U / U(x - c(x) : x >= cutoff).
    pub fn module(algebra: SuperAlgebra, cap: usize, quotient: Quotient) -> Result<Self> {
        if quotient.cutoff + quotient.values.len() != algebra.dim() {
            return Err(Error::Dimension("quotient values do not cover the generators above the cutoff".into()));
        }
        let mut engine = Self::new(algebra, cap);
        engine.quotient = Some(quotient);
        Ok(engine)
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.algebra.dim()).map(|i| self.algebra.label(i).to_string()).collect()
    }

    fn cutoff(&self) -> usize {
        self.quotient.as_ref().map_or(self.algebra.dim(), |q| q.cutoff)
    }

    fn cap_error(&self, word: &[usize]) -> Error {
        Error::CapExceeded { cap: self.cap, word: render_monomial(word, &self.labels()) }
    }

    /// Whether `m` is a normal monomial of this engine.
    pub fn is_normal(&self, m: &[usize]) -> bool {
        let cutoff = self.cutoff();
        m.iter().all(|&x| x < cutoff)
            && m.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !self.algebra.parity(w[0]).is_odd()))
    }

    /// Normal form of x * m for a normal monomial m.
    pub fn left_mul(&mut self, x: usize, m: &[usize]) -> Result<EnvElement> {
        if let Some(hit) = self.memo.get(&(x, m.to_vec())) {
            return Ok(hit.clone());
        }
        if m.len() + 1 > self.cap {
            let mut word = vec![x];
            word.extend_from_slice(m);
            return Err(self.cap_error(&word));
        }
        let conductor = self.algebra.conductor();
        let cutoff = self.cutoff();
        let result = if m.is_empty() {
            if x < cutoff {
                EnvElement::monomial(vec![x], CycScalar::one(conductor))
            } else {
                match &self.quotient.as_ref().expect("cutoff below dimension").values[x - cutoff] {
                    Some(c) => EnvElement::monomial(Vec::new(), c.clone()),
                    None => EnvElement::zero(),
                }
            }
        } else {
            let first = m[0];
            let rest = &m[1..];
            let odd = self.algebra.parity(x).is_odd();
            if x < first || (x == first && !odd) {
                let mut word = Vec::with_capacity(m.len() + 1);
                word.push(x);
                word.extend_from_slice(m);
                EnvElement::monomial(word, CycScalar::one(conductor))
            } else if x == first {
                // x x = 1/2 [x, x] for odd x.
                let square = self.algebra.bracket_basis(x, x).scaled(&self.half);
                self.apply_combination(&square, rest)?
            } else {
                let sign = CycScalar::from_int(conductor, self.algebra.parity(x).sign(self.algebra.parity(first)));
                let moved = self.left_mul(x, rest)?;
                let mut out = self.left_mul_element(first, &moved)?.scaled(&sign);
                let bracket = self.algebra.bracket_basis(x, first).clone();
                out = out.plus(&self.apply_combination(&bracket, rest)?);
                out
            }
        };
        self.memo.insert((x, m.to_vec()), result.clone());
        Ok(result)
    }

    fn apply_combination(&mut self, combo: &Element, m: &[usize]) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (y, c) in combo.iter() {
            let part = self.left_mul(y, m)?;
            out.add_scaled(c, &part);
        }
        Ok(out)
    }

    /// x * e for a normal element e.
    pub fn left_mul_element(&mut self, x: usize, e: &EnvElement) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (m, c) in e.terms() {
            let part = self.left_mul(x, m)?;
            out.add_scaled(c, &part);
        }
        Ok(out)
    }

    /// An algebra element (linear combination of generators) times e.
    pub fn act(&mut self, x: &Element, e: &EnvElement) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (i, c) in x.iter() {
            let part = self.left_mul_element(i, e)?;
            out.add_scaled(c, &part);
        }
        Ok(out)
    }

    /// Normal form of a word of generators.
    pub fn normal_form(&mut self, word: &[usize]) -> Result<EnvElement> {
        if word.len() > self.cap {
            return Err(self.cap_error(word));
        }
        let mut acc = EnvElement::one(self.algebra.conductor());
        for &x in word.iter().rev() {
            acc = self.left_mul_element(x, &acc)?;
        }
        Ok(acc)
    }

    /// Product of two normal elements.
    pub fn multiply(&mut self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (m, c) in a.terms() {
            let mut acc = b.clone();
            for &x in m.iter().rev() {
                acc = self.left_mul_element(x, &acc)?;
            }
            out.add_scaled(c, &acc);
        }
        Ok(out)
    }

    /// Image of a normal element of U in the quotient module of this engine.
    pub fn project(&self, e: &EnvElement) -> EnvElement {
        let Some(q) = &self.quotient else {
            return e.clone();
        };
        let mut out = EnvElement::zero();
        'terms: for (m, c) in e.terms() {
            let split = m.iter().position(|&x| x >= q.cutoff).unwrap_or(m.len());
            let mut coeff = c.clone();
            for &x in &m[split..] {
                match &q.values[x - q.cutoff] {
                    Some(v) => coeff = &coeff * v,
                    None => continue 'terms,
                }
            }
            out.add_term(m[..split].to_vec(), &coeff);
        }
        out
    }
}

/// Normal form by repeatedly rewriting the rightmost out-of-order adjacent
/// pair of some word, with no memoization. Used as an independent check of
/// [`Envelope::normal_form`].
pub fn normal_form_by_rewriting(algebra: &SuperAlgebra, word: &[usize], cap: usize) -> Result<EnvElement> {
    if word.len() > cap {
        let labels: Vec<String> = (0..algebra.dim()).map(|i| algebra.label(i).to_string()).collect();
        return Err(Error::CapExceeded { cap, word: render_monomial(word, &labels) });
    }
    let conductor = algebra.conductor();
    let half = CycScalar::from_rational(conductor, ratio(1, 2));
    let mut pending: BTreeMap<Vec<usize>, CycScalar> = BTreeMap::new();
    pending.insert(word.to_vec(), CycScalar::one(conductor));
    let mut done = EnvElement::zero();
    while let Some((w, c)) = pending.pop_last() {
        let violation = (0..w.len().saturating_sub(1))
            .rev()
            .find(|&p| w[p] > w[p + 1] || (w[p] == w[p + 1] && algebra.parity(w[p]).is_odd()));
        let Some(p) = violation else {
            done.add_term(w, &c);
            continue;
        };
        let (x, y) = (w[p], w[p + 1]);
        let mut push = |word: Vec<usize>, coeff: CycScalar| {
            if coeff.is_zero() {
                return;
            }
            let entry = pending.entry(word).or_insert_with(|| CycScalar::zero(conductor));
            *entry += &coeff;
        };
        let splice = |mid: &[usize]| {
            let mut out = w[..p].to_vec();
            out.extend_from_slice(mid);
            out.extend_from_slice(&w[p + 2..]);
            out
        };
        if x == y {
            for (z, d) in algebra.bracket_basis(x, y).iter() {
                push(splice(&[z]), &(&c * d) * &half);
            }
        } else {
            let sign = CycScalar::from_int(conductor, algebra.parity(x).sign(algebra.parity(y)));
            push(splice(&[y, x]), &c * &sign);
            for (z, d) in algebra.bracket_basis(x, y).iter() {
                push(splice(&[z]), &c * d);
            }
        }
        pending.retain(|_, v| !v.is_zero());
    }
    Ok(done)
}
