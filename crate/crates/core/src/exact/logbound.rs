//! Rational enclosures of natural logarithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `[lo, hi]` with `lo <= ln(r) <= hi`, from `ln r = 2 atanh(z)`,
/// `z = (r - 1)/(r + 1)`, truncated after `terms` odd powers.
///
/// Every series term is positive, so a partial sum is a lower bound; the
/// tail after `z^(2N-1)` is at most `2 z^(2N+1) / ((2N+1)(1 - z^2))`.
pub fn ln_enclosure(r: u64, terms: usize) -> (BigRational, BigRational) {
    assert!(r >= 1, "ln is defined for r >= 1 here");
    if r == 1 {
        return (BigRational::zero(), BigRational::zero());
    }
    let z = BigRational::new(BigInt::from(r - 1), BigInt::from(r + 1));
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    for n in 0..terms {
        sum += &power / BigInt::from(2 * n as u64 + 1);
        power = &power * &z2;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let lo = &two * &sum;
    let tail = &two * &power
        / (BigRational::from_integer(BigInt::from(2 * terms as u64 + 1)) * (BigRational::one() - &z2));
    let hi = &lo + tail;
    (lo, hi)
}
