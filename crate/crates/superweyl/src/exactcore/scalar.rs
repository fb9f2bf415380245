use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{check_conductor, cyclotomic_ref};
use crate::error::{Error, Result};

/// Exact rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// An element of the cyclotomic field Q(z), z a primitive m-th root of unity,
/// stored as its residue modulo the m-th cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn new(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        check_conductor(conductor)?;
        let deg = cyclotomic_ref(conductor).len() - 1;
        if coeffs.len() != deg {
            return Err(Error::Dimension(format!(
                "conductor {conductor} needs {deg} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycScalar { conductor, coeffs })
    }

    pub fn zero(conductor: u32) -> Self {
        let deg = cyclotomic_ref(conductor).len() - 1;
        CycScalar { conductor, coeffs: vec![BigRational::zero(); deg] }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, rat(n))
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut s = Self::zero(conductor);
        s.coeffs[0] = q;
        s
    }

    /// z^k for the primitive root of the given conductor.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let m = conductor as i64;
        let e = k.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::reduce_poly(conductor, poly)
    }

    pub fn zeta(conductor: u32) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational when it lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The value as a machine integer when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if !q.is_integer() {
            return None;
        }
        i64::try_from(q.to_integer()).ok()
    }

    /// Sign of a rational value; `None` for irrational values.
    pub fn rational_sign(&self) -> Option<i32> {
        let q = self.as_rational()?;
        Some(if q.is_zero() {
            0
        } else if q.is_positive() {
            1
        } else {
            -1
        })
    }

    fn reduce_poly(conductor: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_ref(conductor);
        let deg = phi.len() - 1;
        if poly.len() > deg {
            for k in (deg..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut poly[k]);
                for (i, &p) in phi.iter().enumerate().take(deg) {
                    if p != 0 {
                        let idx = k - deg + i;
                        poly[idx] -= &c * rat(p);
                    }
                }
            }
            poly.truncate(deg);
        }
        poly.resize(deg, BigRational::zero());
        CycScalar { conductor, coeffs: poly }
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.conductor == other.conductor {
            Ok(())
        } else {
            Err(Error::ConductorMismatch(self.conductor, other.conductor))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycScalar { conductor: self.conductor, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycScalar { conductor: self.conductor, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        if self.coeffs.len() == 1 {
            return Ok(CycScalar { conductor: self.conductor, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] });
        }
        let n = self.coeffs.len();
        let mut poly = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce_poly(self.conductor, poly))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(CycScalar { conductor: self.conductor, coeffs: vec![self.coeffs[0].recip()] });
        }
        // Solve (multiplication by self) * y = 1 in the power basis.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut power = Self::one(self.conductor);
        let z = Self::zeta(self.conductor);
        for _ in 0..n {
            cols.push(self.checked_mul(&power)?.coeffs);
            power = power.checked_mul(&z)?;
        }
        // Augmented matrix rows: a[r][c] = cols[c][r], rhs e_0.
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            a.swap(c, p);
            let piv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v /= &piv;
            }
            let pivot_row = a[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                        *x -= &f * y;
                    }
                }
            }
        }
        let coeffs = a.into_iter().map(|row| row[n].clone()).collect();
        Ok(CycScalar { conductor: self.conductor, coeffs })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Image under the embedding Q(z_c) -> Q(z_m), z_c = z_m^(m/c); requires c | m
    /// (conductors 1 and 2 describe Q and embed everywhere).
    pub fn embed(&self, target: u32) -> Result<Self> {
        check_conductor(target)?;
        if self.conductor == target {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(target, q.clone()));
        }
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch(self.conductor, target));
        }
        let step = (target / self.conductor) as i64;
        let mut acc = Self::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Self::zeta_pow(target, step * i as i64).scale_rational(c);
                acc = acc.checked_add(&term)?;
            }
        }
        Ok(acc)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        CycScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Canonical text form `p0/q0 + p1/q1*z + p2/q2*z^2 ...`.
    pub fn to_exact_string(&self) -> String {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let q = format!("{}/{}", c.numer(), c.denom());
                match i {
                    0 => q,
                    1 => format!("{q}*z"),
                    _ => format!("{q}*z^{i}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Short exact form for reports: "3" or "-1/2" for rationals, the full
    /// serialization otherwise.
    pub fn to_compact_string(&self) -> String {
        match self.as_rational() {
            Some(q) if q.is_integer() => q.numer().to_string(),
            Some(q) => format!("{}/{}", q.numer(), q.denom()),
            None => self.to_exact_string(),
        }
    }

    /// Inverse of [`CycScalar::to_exact_string`].
    pub fn parse(conductor: u32, text: &str) -> Result<Self> {
        check_conductor(conductor)?;
        let deg = cyclotomic_ref(conductor).len() - 1;
        let mut coeffs = vec![BigRational::zero(); deg];
        let mut seen = vec![false; deg];
        for term in text.split(" + ") {
            let term = term.trim();
            let (num, power) = match term.split_once("*z") {
                None => (term, 0usize),
                Some((n, rest)) => {
                    let p = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|r| r.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad power in '{term}'")))?
                    };
                    (n, p)
                }
            };
            if power >= deg || seen[power] {
                return Err(Error::Parse(format!("bad or repeated term '{term}'")));
            }
            seen[power] = true;
            coeffs[power] = parse_rational(num)?;
        }
        Ok(CycScalar { conductor, coeffs })
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{text}'"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.to_exact_string(), self.conductor)
    }
}

// Operator forms panic on conductor mismatch; the checked_* methods report it.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$checked(rhs).expect("conductor mismatch")
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$checked(&rhs).expect("conductor mismatch")
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$checked(rhs).expect("conductor mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_squared_is_one() {
        let z = CycScalar::zeta(2);
        assert!((&z * &z).is_one());
        assert_eq!(z, CycScalar::from_int(2, -1));
    }

    #[test]
    fn zeta_four_squared_is_minus_one() {
        let z = CycScalar::zeta(4);
        assert_eq!(&z * &z, CycScalar::from_int(4, -1));
    }

    #[test]
    fn inverse_of_zeta_is_last_power() {
        for m in 1..=12 {
            let z = CycScalar::zeta(m);
            assert_eq!(z.inv().unwrap(), CycScalar::zeta_pow(m, m as i64 - 1));
            assert!(CycScalar::zeta_pow(m, m as i64).is_one());
        }
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(CycScalar::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors_rejected() {
        let a = CycScalar::one(3);
        let b = CycScalar::one(4);
        assert_eq!(a.checked_add(&b), Err(Error::ConductorMismatch(3, 4)));
        assert_eq!(a.checked_mul(&b), Err(Error::ConductorMismatch(3, 4)));
    }

    #[test]
    fn general_inverse() {
        let a = CycScalar::new(5, vec![rat(1), ratio(-2, 3), rat(0), rat(4)]).unwrap();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn string_round_trip() {
        let a = CycScalar::new(8, vec![ratio(-1, 2), rat(0), ratio(3, 7), rat(5)]).unwrap();
        let s = a.to_exact_string();
        assert_eq!(s, "-1/2 + 0/1*z + 3/7*z^2 + 5/1*z^3");
        assert_eq!(CycScalar::parse(8, &s).unwrap(), a);
        assert_eq!(CycScalar::from_int(1, 3).to_exact_string(), "3/1");
    }

    #[test]
    fn embedding_matches_powers() {
        let z3 = CycScalar::zeta(3);
        let e = z3.embed(6).unwrap();
        assert_eq!(e, CycScalar::zeta_pow(6, 2));
        assert!(z3.embed(4).is_err());
    }
}
