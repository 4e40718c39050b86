//! Coefficients `C_{r,k}` of `prod_{j=1}^{2^r} (j - T) / (2^r)!`.
//!
//! As a polynomial in `T` this is 1 at `T = 0` and vanishes at
//! `T = 1, ..., 2^r`, so `sum_k C_{r,k} rho^k` is the indicator of `rho = 0`
//! for every `0 <= rho <= 2^r`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const FALLING_COEFFS_MAX_R: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    r: u32,
    coeffs: Vec<BigRational>,
}

impl CoefficientVector {
    pub fn r(&self) -> u32 {
        self.r
    }

    /// `C_{r,0}, ..., C_{r,2^r}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `sum_k C_{r,k} t^k`.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// `sum_k C_{r,k} values[k]`; `values` must have one entry per coefficient.
    pub fn combine(&self, values: &[BigUint]) -> Result<BigRational> {
        if values.len() != self.coeffs.len() {
            return Err(Error::CoefficientMismatch {
                expected: self.coeffs.len() as u32,
                found: values.len() as u32,
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(values)
            .map(|(c, v)| c * BigRational::from_integer(BigInt::from(v.clone())))
            .sum())
    }
}

impl Serialize for CoefficientVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("CoefficientVector", 2)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

pub fn falling_coeffs(r: u32) -> Result<CoefficientVector> {
    if r > FALLING_COEFFS_MAX_R {
        return Err(Error::CapExceeded {
            what: "falling coefficients",
            r,
            cap: FALLING_COEFFS_MAX_R,
        });
    }
    let n = 1u64 << r;
    // integer coefficients of prod (j - T), lowest degree first
    let mut poly = vec![BigInt::one()];
    for j in 1..=n {
        let j = BigInt::from(j);
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += &j * c;
            next[i + 1] -= c;
        }
        poly = next;
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let coeffs = poly
        .into_iter()
        .map(|c| BigRational::new(c, fact.clone()))
        .collect();
    Ok(CoefficientVector { r, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_level() {
        let c = falling_coeffs(1).unwrap();
        assert_eq!(c.coeffs(), &[q(1, 1), q(-3, 2), q(1, 2)]);
        assert_eq!(falling_coeffs(0).unwrap().coeffs(), &[q(1, 1), q(-1, 1)]);
    }

    #[test]
    fn indicator_of_zero() {
        for r in 0..=FALLING_COEFFS_MAX_R {
            let c = falling_coeffs(r).unwrap();
            let n = 1i64 << r;
            assert_eq!(c.coeffs().len() as i64, n + 1);
            assert_eq!(c.eval(&q(0, 1)), q(1, 1));
            for m in 1..=n {
                assert!(c.eval(&q(m, 1)).is_zero(), "r={r} m={m}");
            }
            // leading coefficient (-1)^n / n!
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(c.coeffs()[n as usize], BigRational::new(sign.into(), fact));
        }
    }

    #[test]
    fn matches_stirling_numbers() {
        // unsigned Stirling numbers of the first kind:
        // T (T+1) ... (T+n) = sum_k s(n+1, k) T^k
        let r = 3u32;
        let n = 1usize << r;
        let mut s = vec![vec![BigInt::zero(); n + 2]; n + 2];
        s[0][0] = BigInt::one();
        for i in 1..=n + 1 {
            for k in 1..=i {
                s[i][k] = &s[i - 1][k - 1] + BigInt::from(i as u64 - 1) * &s[i - 1][k];
            }
        }
        let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
        let c = falling_coeffs(r).unwrap();
        for k in 0..=n {
            // coefficient of T^k in prod (j - T) is (-1)^k * s(n+1, k+1)
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let want = BigRational::new(BigInt::from(sign) * &s[n + 1][k + 1], fact.clone());
            assert_eq!(c.coeffs()[k], want, "k={k}");
        }
    }

    #[test]
    fn combine_checks_length() {
        let c = falling_coeffs(1).unwrap();
        assert!(matches!(
            c.combine(&[BigUint::one()]),
            Err(Error::CoefficientMismatch { expected: 3, found: 1 })
        ));
        // p = 13, r = 1: moments (13, 13, 25) give (13 - 1)/2 zeros
        let m = [13u32, 13, 25].map(BigUint::from);
        assert_eq!(c.combine(&m).unwrap(), q(6, 1));
    }
}
