use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest conductor the scalar layer supports.
pub const MAX_CONDUCTOR: u32 = 12;

fn table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut polys: Vec<Vec<i64>> = vec![Vec::new()];
        for m in 1..=MAX_CONDUCTOR as usize {
            // x^m - 1 divided by every Phi_d with d | m, d < m.
            let mut num = vec![0i64; m + 1];
            num[0] = -1;
            num[m] = 1;
            for (d, phi) in polys.iter().enumerate().skip(1) {
                if m % d == 0 {
                    num = divide_monic(&num, phi);
                }
            }
            polys.push(num);
        }
        polys
    })
}

/// Exact quotient of `num` by the monic polynomial `den` (coefficients low to high).
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Coefficients (lowest degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Result<Vec<i64>> {
    check_conductor(m)?;
    Ok(table()[m as usize].clone())
}

pub(crate) fn cyclotomic_ref(m: u32) -> &'static [i64] {
    &table()[m as usize]
}

/// Degree of the m-th cyclotomic polynomial (Euler's totient).
pub fn field_degree(m: u32) -> Result<usize> {
    check_conductor(m)?;
    Ok(table()[m as usize].len() - 1)
}

/// Rejects conductors outside the supported range.
pub fn check_conductor(m: u32) -> Result<()> {
    if (1..=MAX_CONDUCTOR).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedConductor(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(p: &[i64], x: i64) -> i64 {
        p.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(3).unwrap(), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12).unwrap(), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_of_divisors_is_x_m_minus_one() {
        for m in 1..=12u32 {
            let mut prod = vec![1i64];
            for d in 1..=m {
                if m % d == 0 {
                    let phi = cyclotomic_polynomial(d).unwrap();
                    let mut next = vec![0i64; prod.len() + phi.len() - 1];
                    for (i, a) in prod.iter().enumerate() {
                        for (j, b) in phi.iter().enumerate() {
                            next[i + j] += a * b;
                        }
                    }
                    prod = next;
                }
            }
            for x in -3..=3 {
                assert_eq!(eval(&prod, x), x.pow(m) - 1);
            }
        }
    }

    #[test]
    fn degrees_are_totients() {
        let phi = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for m in 1..=12u32 {
            assert_eq!(field_degree(m).unwrap(), phi[m as usize - 1]);
        }
    }

    #[test]
    fn out_of_range() {
        assert_eq!(cyclotomic_polynomial(0), Err(Error::UnsupportedConductor(0)));
        assert_eq!(cyclotomic_polynomial(13), Err(Error::UnsupportedConductor(13)));
    }
}
