use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// `numerator / 2^log2_denominator`, kept reduced: the numerator is odd
/// unless the exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    log2_den: u64,
}

impl DyadicRational {
    pub fn new(num: BigInt, log2_den: u64) -> Self {
        let mut out = Self { num, log2_den };
        out.normalize();
        out
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            log2_den: 0,
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn log2_denominator(&self) -> u64 {
        self.log2_den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.log2_den == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn half(&self) -> Self {
        Self::new(self.num.clone(), self.log2_den + 1)
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            log2_den: self.log2_den,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new_raw(self.num.clone(), BigInt::one() << self.log2_den)
    }

    /// Nearest `f64`, also for numerators far beyond the `f64` range.
    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        if bits <= 1000 && self.log2_den <= 1000 {
            return self.num.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.log2_den as i32);
        }
        // keep 64 significant bits, fold the rest into the exponent
        let shift = bits.saturating_sub(64);
        let top = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
        let exp = shift as f64 - self.log2_den as f64;
        top * exp.exp2()
    }

    /// Rounds to at most `bits` significant bits (round half away from zero).
    pub fn round_to_bits(&self, bits: u64) -> Self {
        let len = self.num.bits();
        if len <= bits {
            return self.clone();
        }
        let shift = len - bits;
        if shift > self.log2_den {
            // would round an integer part away; keep as is
            return self.clone();
        }
        let (sign, mag) = (self.num.sign(), self.num.magnitude());
        let rounded = (mag + (num_bigint::BigUint::one() << (shift - 1))) >> shift;
        let num = BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, rounded);
        Self::new(num, self.log2_den - shift)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.log2_den = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.log2_den);
        if shift > 0 {
            self.num >>= shift;
            self.log2_den -= shift;
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let e = self.log2_den.max(other.log2_den);
        (
            &self.num << (e - self.log2_den),
            &other.num << (e - other.log2_den),
            e,
        )
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> DyadicRational {
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: Self) -> DyadicRational {
        let (a, b, e) = self.aligned(rhs);
        DyadicRational::new(a - b, e)
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: Self) -> DyadicRational {
        // product of odd numerators is odd: already reduced
        DyadicRational::new(&self.num * &rhs.num, self.log2_den + rhs.log2_den)
    }
}

impl Neg for &DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        DyadicRational {
            num: -&self.num,
            log2_den: self.log2_den,
        }
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    /// `num/2^e`, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.log2_den)
        }
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
