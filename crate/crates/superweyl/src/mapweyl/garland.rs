use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gamma::{map_superalgebra, GammaAlgebra};
use super::pbw::{EnvElement, Envelope};
use crate::classical::{build_osp, root_triple, RootSystem};
use crate::equivariant::root_data;
use crate::error::{Error, Result};
use crate::exactcore::CycScalar;
use crate::liesuper::{Parity, SuperAlgebra};

/// The subalgebra spanned by f, h, e for an even root, in that order.
pub fn root_sl2(algebra: &SuperAlgebra, rs: &RootSystem, root: usize) -> Result<SuperAlgebra> {
    if rs.roots[root].parity != Parity::Even {
        return Err(Error::Invalid("sl2 subalgebras come from even roots".into()));
    }
    let triple = root_triple(algebra, rs, root)?;
    let sub = algebra.induced(vec![triple.f, triple.h, triple.e], format!("sl2({})", algebra.name()))?;
    sub.algebra.with_labels(vec!["f".into(), "h".into(), "e".into()])
}

/// The sl2 of the positive even root of osp(1|2).
pub fn osp12_even_sl2() -> Result<SuperAlgebra> {
    let g = build_osp(1, 2)?;
    let (rs, _) = root_data(&g)?;
    let root = (0..rs.len())
        .find(|&i| rs.base.positive[i] && rs.roots[i].parity == Parity::Even)
        .ok_or_else(|| Error::RootDecomposition("no positive even root".into()))?;
    root_sl2(&g, &rs, root)
}

/// sl2 (x) A^Gamma together with its enveloping algebra engine. Basis element
/// k * dim B + j is (f, h, e)[k] (x) b_j.
pub struct GarlandSetting {
    pub coefficients: GammaAlgebra,
    pub envelope: Envelope,
}

impl GarlandSetting {
    /// `sl2` must have basis f, h, e; the invariant part of `coefficients`
    /// is used.
    pub fn new(sl2: &SuperAlgebra, coefficients: &GammaAlgebra, cap: usize) -> Result<Self> {
        if sl2.dim() != 3 || (0..3).any(|i| sl2.parity(i).is_odd()) {
            return Err(Error::Invalid("expected an even algebra with basis f, h, e".into()));
        }
        let invariant = coefficients.invariant_part();
        let map = map_superalgebra(sl2, &invariant)?;
        Ok(GarlandSetting { coefficients: invariant, envelope: Envelope::new(map, cap) })
    }

    /// Basis index of (f, h, e)[slot] (x) b_coefficient.
    pub fn index(&self, slot: usize, coefficient: usize) -> usize {
        slot * self.coefficients.dim() + coefficient
    }

    /// Basis index in the invariant part of an element of the coefficients.
    pub fn locate(&self, label: &str) -> Result<usize> {
        self.coefficients
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Invalid(format!("{label} is not an invariant coefficient")))
    }
}

/// Coefficient of u^k in exp(-sum_i (h (x) a^i) u^i / i), normal ordered,
/// through k p_k = -sum_{i=1}^k (h (x) a^i) p_{k-i}.
pub fn garland_series(setting: &mut GarlandSetting, a: &str, k: usize) -> Result<EnvElement> {
    let a = setting.locate(a)?;
    let conductor = setting.envelope.algebra().conductor();
    if k > setting.envelope.cap() {
        return Err(Error::CapExceeded { cap: setting.envelope.cap(), word: format!("p_{k}") });
    }
    let mut series = vec![EnvElement::one(conductor)];
    for n in 1..=k {
        let mut sum = EnvElement::zero();
        for i in 1..=n {
            let Some(power) = setting.coefficients.power(a, i as u32) else {
                continue;
            };
            let h = setting.index(1, power);
            sum = sum.plus(&setting.envelope.left_mul_element(h, &series[n - i])?);
        }
        let factor = CycScalar::from_rational(conductor, BigRational::new((-1).into(), BigInt::from(n)));
        series.push(sum.scaled(&factor));
    }
    Ok(series.pop().expect("nonempty"))
}

/// The normal-ordered combination
/// (e (x) a)^(r) f^(r+1) - (-1)^r sum_{i=0}^r (f (x) a^{r-i}) p_i
/// and whether each of its monomials has a factor e (x) b, which is
/// membership in the left ideal generated by e (x) A^Gamma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarlandReport {
    pub r: usize,
    pub coefficient: String,
    pub divided: bool,
    pub residual: EnvElement,
    pub rendered: String,
    pub holds: bool,
}

impl fmt::Display for GarlandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r {} a {} divided {}", self.r, self.coefficient, self.divided)?;
        writeln!(f, "residual {}", self.rendered)?;
        writeln!(f, "member {}", self.holds)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

/// Forms the identity for (e (x) a)^r f^(r+1) with divided powers
/// x^(n) = x^n / n! when `divided` is set, and plain powers otherwise.
pub fn check_garland(setting: &mut GarlandSetting, a: &str, r: usize, divided: bool) -> Result<GarlandReport> {
    if r == 0 || r > 3 {
        return Err(Error::Invalid(format!("r = {r} outside 1..=3")));
    }
    let a_index = setting.locate(a)?;
    let conductor = setting.envelope.algebra().conductor();
    let unit = setting.coefficients.unit;
    let f_one = setting.index(0, unit);
    let mut word = Vec::new();
    if let Some(power) = setting.coefficients.power(a_index, 1) {
        word.extend(std::iter::repeat_n(setting.index(2, power), r));
    }
    word.extend(std::iter::repeat_n(f_one, r + 1));
    let mut combination =
        if word.len() == 2 * r + 1 { setting.envelope.normal_form(&word)? } else { EnvElement::zero() };
    if divided {
        let scale = BigRational::new(BigInt::from(1), factorial(r) * factorial(r + 1));
        combination = combination.scaled(&CycScalar::from_rational(conductor, scale));
    }
    let sign = CycScalar::from_int(conductor, if r.is_multiple_of(2) { -1 } else { 1 });
    for i in 0..=r {
        let Some(power) = setting.coefficients.power(a_index, (r - i) as u32) else {
            continue;
        };
        let p = garland_series(setting, a, i)?;
        let term = setting.envelope.left_mul_element(setting.index(0, power), &p)?;
        combination.add_scaled(&sign, &term);
    }
    let raising_from = setting.index(2, 0);
    let holds = combination.terms().all(|(m, _)| m.iter().any(|&x| x >= raising_from));
    let rendered = combination.render(&setting.envelope.labels());
    Ok(GarlandReport { r, coefficient: a.to_string(), divided, residual: combination, rendered, holds })
}
