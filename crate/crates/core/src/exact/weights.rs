//! Exponential weights `nu(r; m)` with `E(X; r) = sum_m nu(r; m) e^{mX}`.
//!
//! `E(X; 0) = e^X` and `E(X; r) = (1 + E(X; r-1)^2) / 2`, so the weights
//! satisfy `nu_r = (delta_0 + nu_{r-1} * nu_{r-1}) / 2` with `*` the
//! convolution over `m`. All weights of level `r` share the denominator
//! `2^(2^r - 1)`; they are stored as integer numerators over it, densely
//! for `m = 0..=2^r`, and the convolution square is done with a single
//! big-integer squaring (Kronecker substitution).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::dyadic::DyadicRational;
use super::mu::MU_EXACT_CAP;
use crate::error::{Error, Result};

/// Largest `r` for which the full weight vector is built.
pub const NU_WEIGHTS_MAX_R: u32 = 13;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpWeightVector {
    r: u32,
    log2_den: u64,
    numerators: Vec<BigUint>,
}

impl ExpWeightVector {
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Exponent `e` of the common denominator `2^e`.
    pub fn log2_denominator(&self) -> u64 {
        self.log2_den
    }

    /// Numerators over `2^e`, indexed by `m = 0..=2^r`.
    pub fn numerators(&self) -> &[BigUint] {
        &self.numerators
    }

    /// `nu(r; m)`, zero outside the support.
    pub fn weight(&self, m: usize) -> DyadicRational {
        match self.numerators.get(m) {
            Some(w) => DyadicRational::new(w.clone().into(), self.log2_den),
            None => DyadicRational::zero(),
        }
    }

    /// Sum of all weights, as a dyadic rational.
    pub fn total(&self) -> DyadicRational {
        let s: BigUint = self.numerators.iter().sum();
        DyadicRational::new(s.into(), self.log2_den)
    }

    /// `sum_m nu(r; m) m^k`, which must be an integer.
    pub fn moment(&self, k: u32) -> Result<BigUint> {
        let s: BigUint = self
            .numerators
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(m, w)| w * BigUint::from(m).pow(k))
            .sum();
        let mask = (BigUint::one() << self.log2_den) - 1u32;
        if !(&s & &mask).is_zero() {
            return Err(Error::NonIntegral("weighted moment"));
        }
        Ok(s >> self.log2_den)
    }

    /// Nonzero entries as `(m, nu(r; m))`.
    pub fn support(&self) -> Vec<(usize, DyadicRational)> {
        self.numerators
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(m, _)| (m, self.weight(m)))
            .collect()
    }
}

impl Serialize for ExpWeightVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let weights: Vec<(usize, String)> = self
            .support()
            .into_iter()
            .map(|(m, w)| (m, w.to_string()))
            .collect();
        let mut st = s.serialize_struct("ExpWeightVector", 2)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("weights", &weights)?;
        st.end()
    }
}

pub fn nu_weights(r: u32) -> Result<ExpWeightVector> {
    if r > NU_WEIGHTS_MAX_R {
        return Err(Error::CapExceeded {
            what: "exponential weights",
            r,
            cap: NU_WEIGHTS_MAX_R,
        });
    }
    let mut numerators = vec![BigUint::zero(), BigUint::one()];
    let mut log2_den = 0u64;
    for level in 1..=r {
        let mut sq = if level == 1 {
            kronecker_square(&numerators)
        } else {
            // support of the previous level is on even m only
            let evens: Vec<BigUint> = numerators.iter().step_by(2).cloned().collect();
            let half = kronecker_square(&evens);
            let mut dense = vec![BigUint::zero(); 2 * half.len() - 1];
            for (i, v) in half.into_iter().enumerate() {
                dense[2 * i] = v;
            }
            dense
        };
        sq[0] += BigUint::one() << (2 * log2_den);
        numerators = sq;
        log2_den = 2 * log2_den + 1;
    }
    Ok(ExpWeightVector {
        r,
        log2_den,
        numerators,
    })
}

/// `N(r; k) = sum_m nu(r; m) m^k`.
pub fn moment_from_weights(r: u32, k: u32) -> Result<BigUint> {
    nu_weights(r)?.moment(k)
}

/// `nu(r; 0)` from `nu(0; 0) = 0`, `nu(r; 0) = (1 + nu(r-1; 0)^2) / 2`.
pub fn nu_zero(r: u32) -> Result<DyadicRational> {
    if r > MU_EXACT_CAP {
        return Err(Error::CapExceeded {
            what: "nu(r; 0)",
            r,
            cap: MU_EXACT_CAP,
        });
    }
    let mut v = DyadicRational::zero();
    for _ in 0..r {
        v = (&DyadicRational::one() + &(&v * &v)).half();
    }
    Ok(v)
}

/// Coefficients of the square of the polynomial `sum_i coeffs[i] x^i`.
fn kronecker_square(coeffs: &[BigUint]) -> Vec<BigUint> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    let max_bits = coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
    let len_bits = 64 - (n as u64).leading_zeros() as u64;
    // every coefficient of the square is below n * 2^(2 max_bits)
    let slot = 2 * max_bits + len_bits + 1;
    let out_len = 2 * n - 1;
    let mut packed = vec![0u32; ((n as u64 * slot) / 32 + 2) as usize];
    for (i, c) in coeffs.iter().enumerate() {
        or_bits(&mut packed, i as u64 * slot, &c.to_u32_digits());
    }
    let p = BigUint::new(packed);
    let sq = &p * &p;
    let digits = sq.to_u32_digits();
    (0..out_len)
        .map(|i| extract_bits(&digits, i as u64 * slot, slot))
        .collect()
}

fn or_bits(dst: &mut [u32], offset: u64, src: &[u32]) {
    let word = (offset / 32) as usize;
    let shift = (offset % 32) as u32;
    for (j, &d) in src.iter().enumerate() {
        let wide = (d as u64) << shift;
        dst[word + j] |= wide as u32;
        if shift != 0 {
            dst[word + j + 1] |= (wide >> 32) as u32;
        }
    }
}

fn extract_bits(src: &[u32], offset: u64, len: u64) -> BigUint {
    let first = (offset / 32) as usize;
    if first >= src.len() {
        return BigUint::zero();
    }
    let shift = (offset % 32) as u32;
    let words = (len + shift as u64).div_ceil(32) as usize;
    let end = (first + words).min(src.len());
    let mut v = BigUint::new(src[first..end].to_vec()) >> shift;
    if v.bits() > len {
        v &= (BigUint::one() << len) - 1u32;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::curves::CurveCountTable;
    use crate::exact::mu::mu;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    /// Direct rational convolution of `(delta_0 + nu * nu) / 2`.
    fn weights_oracle(r: u32) -> Vec<BigRational> {
        let mut w = vec![BigRational::zero(), BigRational::one()];
        for _ in 0..r {
            let mut next = vec![BigRational::zero(); 2 * w.len() - 1];
            for (i, a) in w.iter().enumerate() {
                for (j, b) in w.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            next[0] += BigRational::one();
            let two = BigRational::from_integer(2.into());
            w = next.into_iter().map(|x| x / &two).collect();
        }
        w
    }

    #[test]
    fn examples() {
        let w0 = nu_weights(0).unwrap();
        assert_eq!(w0.support(), vec![(1, DyadicRational::one())]);
        let w1 = nu_weights(1).unwrap();
        let half = DyadicRational::one().half();
        assert_eq!(w1.support(), vec![(0, half.clone()), (2, half)]);
        let w2 = nu_weights(2).unwrap();
        let q = |n: i64, e: u64| DyadicRational::new(n.into(), e);
        assert_eq!(w2.support(), vec![(0, q(5, 3)), (2, q(1, 2)), (4, q(1, 3))]);
    }

    #[test]
    fn kronecker_matches_direct_convolution() {
        for r in 0..=7 {
            let fast = nu_weights(r).unwrap();
            let slow = weights_oracle(r);
            assert_eq!(fast.numerators().len(), slow.len());
            for (m, w) in slow.iter().enumerate() {
                assert_eq!(&fast.weight(m).to_rational(), w, "r={r} m={m}");
            }
        }
    }

    #[test]
    fn kronecker_square_of_irregular_polynomial() {
        let coeffs: Vec<BigUint> = [0u64, 7, u64::MAX, 1, 0, 123_456_789]
            .iter()
            .map(|&x| BigUint::from(x))
            .collect();
        let sq = kronecker_square(&coeffs);
        for (k, got) in sq.iter().enumerate() {
            let mut want = BigUint::zero();
            for i in 0..coeffs.len() {
                if k >= i && k - i < coeffs.len() {
                    want += &coeffs[i] * &coeffs[k - i];
                }
            }
            assert_eq!(got, &want, "k={k}");
        }
    }

    #[test]
    fn weights_sum_to_one_with_even_support() {
        for r in 0..=10 {
            let w = nu_weights(r).unwrap();
            assert_eq!(w.total(), DyadicRational::one());
            if r >= 1 {
                assert!(w.support().iter().all(|(m, _)| m % 2 == 0));
            }
        }
    }

    #[test]
    fn moments_are_curve_counts() {
        let t = CurveCountTable::new(6, 12).unwrap();
        for r in 0..=6 {
            for k in 0..=12 {
                assert_eq!(&moment_from_weights(r, k).unwrap(), t.get(r, k), "r={r} k={k}");
            }
        }
        assert_eq!(moment_from_weights(2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(moment_from_weights(1, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(moment_from_weights(5, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn zero_weight_matches_mu() {
        for r in 0..=10 {
            let w = nu_weights(r).unwrap().weight(0);
            assert_eq!(w, nu_zero(r).unwrap());
            assert_eq!(&DyadicRational::one() - &w, mu(r).value);
        }
    }

    /// Truncated power series in `X` with rational coefficients.
    fn series_square(a: &[BigRational]) -> Vec<BigRational> {
        let n = a.len();
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += &a[i] * &a[j];
            }
        }
        out
    }

    /// Square root of a series with constant term 1.
    fn series_sqrt(a: &[BigRational]) -> Vec<BigRational> {
        let n = a.len();
        let two = BigRational::from_integer(2.into());
        let mut s = vec![BigRational::zero(); n];
        s[0] = BigRational::one();
        for k in 1..n {
            let mut acc = a[k].clone();
            for i in 1..k {
                acc -= &s[i] * &s[k - i];
            }
            s[k] = acc / &two;
        }
        s
    }

    fn factorial(k: usize) -> BigRational {
        BigRational::from_integer((1..=k as u64).product::<u64>().into())
    }

    /// `N(r; k) = k! [X^k] E(X; r)` for the two candidate relations.
    #[test]
    fn egf_relation_regression() {
        const K: usize = 6;
        let exp: Vec<BigRational> = (0..K).map(|k| BigRational::one() / factorial(k)).collect();
        let half = |s: Vec<BigRational>| -> Vec<BigRational> {
            let mut s = s;
            s[0] += BigRational::one();
            let two = BigRational::from_integer(2.into());
            s.into_iter().map(|x| x / &two).collect()
        };
        let table = CurveCountTable::new(4, (K - 1) as u32).unwrap();
        let mut corrected = exp.clone();
        let mut literal = exp;
        for r in 1..=4u32 {
            corrected = half(series_square(&corrected));
            literal = series_sqrt(&half(series_square(&literal)));
            for (k, c) in corrected.iter().enumerate() {
                let n = c * factorial(k);
                let want = BigRational::from_integer(BigInt::from(table.get(r, k as u32).clone()));
                assert_eq!(n, want, "r={r} k={k}");
            }
            let lit_n2 = &literal[2] * factorial(2);
            assert_ne!(lit_n2, BigRational::from_integer((r + 1).into()), "r={r}");
        }
        // literal relation at r = 1 gives N(1;1) = 1/2 and N(1;2) = 3/4
        let mut lit1 = (0..K).map(|k| BigRational::one() / factorial(k)).collect::<Vec<_>>();
        lit1 = series_sqrt(&half(series_square(&lit1)));
        assert_eq!(lit1[1], BigRational::new(1.into(), 2.into()));
        assert_eq!(&lit1[2] * factorial(2), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            nu_weights(NU_WEIGHTS_MAX_R + 1),
            Err(Error::CapExceeded { .. })
        ));
    }
}
