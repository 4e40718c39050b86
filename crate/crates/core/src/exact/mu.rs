//! The limiting image densities `mu_r` and `nu_r = 2 / mu_r`.
//!
//! `mu_0 = 1` and `mu_{r+1} = mu_r - mu_r^2 / 2`. Writing `mu_r = n_r / 2^e_r`
//! one has `e_r = 2^r - 1` and `n_{r+1} = n_r (2^{e_r + 1} - n_r)`, so the
//! numerator doubles in length each step. Exact values are produced up to
//! [`MU_EXACT_CAP`]; beyond it each step is rounded to
//! [`FALLBACK_MANTISSA_BITS`] significant bits and the value is flagged.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::dyadic::DyadicRational;
use super::logbound::ln_enclosure;

pub const MU_EXACT_CAP: u32 = 25;
pub const FALLBACK_MANTISSA_BITS: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mu {
    pub r: u32,
    pub value: DyadicRational,
    /// False once the rounded fallback has been used.
    pub exact: bool,
}

/// Yields `mu_0, mu_1, ...`.
#[derive(Clone, Debug)]
pub struct MuSequence {
    next: Mu,
    exact_cap: u32,
}

impl MuSequence {
    pub fn new() -> Self {
        Self::with_exact_cap(MU_EXACT_CAP)
    }

    /// Switches to the rounded recurrence after `exact_cap` instead of
    /// [`MU_EXACT_CAP`].
    pub fn with_exact_cap(exact_cap: u32) -> Self {
        Self {
            next: Mu {
                r: 0,
                value: DyadicRational::one(),
                exact: true,
            },
            exact_cap,
        }
    }
}

impl Default for MuSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for MuSequence {
    type Item = Mu;

    fn next(&mut self) -> Option<Mu> {
        let cur = &self.next;
        let square_half = (&cur.value * &cur.value).half();
        let mut value = &cur.value - &square_half;
        let r = cur.r + 1;
        let exact = r <= self.exact_cap;
        if !exact {
            value = value.round_to_bits(FALLBACK_MANTISSA_BITS);
        }
        let following = Mu { r, value, exact };
        Some(std::mem::replace(&mut self.next, following))
    }
}

/// `mu_r`; exact for `r <= MU_EXACT_CAP`.
pub fn mu(r: u32) -> Mu {
    MuSequence::new().nth(r as usize).expect("infinite sequence")
}

/// `nu_r = 2 / mu_r`.
pub fn nu(r: u32) -> BigRational {
    nu_from_mu(&mu(r).value)
}

fn nu_from_mu(mu: &DyadicRational) -> BigRational {
    let den = mu.numerator().clone();
    let num = BigInt::one() << (mu.log2_denominator() + 1);
    // odd denominator against a power of two: already coprime unless den is even
    if den.bit(0) {
        BigRational::new_raw(num, den)
    } else {
        BigRational::new(num, den)
    }
}

/// `nu_r` by `nu_0 = 2`, `nu_{r+1} = nu_r + 1 + 1/(nu_r - 1)`, as an
/// unreduced fraction `(num, den)`.
///
/// With `nu = N/D` the step is `N^2 / (D (N - D))`, which needs no gcd.
pub fn nu_by_recurrence(r: u32) -> (BigUint, BigUint) {
    let mut num = BigUint::from(2u32);
    let mut den = BigUint::one();
    for _ in 0..r {
        let next_den = &den * (&num - &den);
        num = &num * &num;
        den = next_den;
    }
    (num, den)
}

/// Whether `2 / mu_r` equals the `nu`-recurrence value, by cross
/// multiplication.
pub fn nu_paths_agree(r: u32) -> bool {
    nu_paths_agree_for(&mu(r))
}

pub fn nu_paths_agree_for(m: &Mu) -> bool {
    let (num, den) = nu_by_recurrence(m.r);
    let mu_num = m.value.numerator().to_biguint().expect("mu > 0");
    let two_pow = BigUint::one() << (m.value.log2_denominator() + 1);
    // num/den == 2^(e+1)/mu_num
    &num * &mu_num == &den * &two_pow
}

/// Outcome of checking `r + 2 <= nu_r <= r + 3 + ln r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NuBounds {
    pub r: u32,
    pub lower_holds: bool,
    /// The upper bound holds against a certified lower bound for `ln r`.
    pub upper_certified: bool,
    /// The upper bound fails against a certified upper bound for `ln r`.
    pub upper_refuted: bool,
    /// `mu_r` was exact.
    pub exact: bool,
}

impl NuBounds {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_certified
    }
}

/// Checks `r + 2 <= nu_r <= r + 3 + ln r` for `r >= 1`.
///
/// The comparison with `ln r` uses a rational enclosure: the bound counts as
/// holding only if `nu_r <= r + 3 + lo` with `lo <= ln r`.
pub fn check_nu_bounds(r: u32) -> NuBounds {
    check_nu_bounds_for(&mu(r))
}

pub fn check_nu_bounds_for(m: &Mu) -> NuBounds {
    let r = m.r;
    assert!(r >= 1, "bounds are stated for r >= 1");
    let nu = nu_from_mu(&m.value);
    let rq = BigRational::from_integer(BigInt::from(r));
    let lower_holds = nu >= &rq + BigRational::from_integer(BigInt::from(2));
    let base = &rq + BigRational::from_integer(BigInt::from(3));
    let mut terms = 32;
    loop {
        let (lo, hi) = ln_enclosure(r as u64, terms);
        let upper_certified = nu <= &base + &lo;
        let upper_refuted = nu > &base + &hi;
        if upper_certified || upper_refuted || terms >= 4096 {
            return NuBounds {
                r,
                lower_holds,
                upper_certified,
                upper_refuted,
                exact: m.exact,
            };
        }
        terms *= 2;
    }
}

/// `nu_r` in `f64`, for the long-range check past the exact cap.
pub fn nu_f64(m: &Mu) -> f64 {
    2.0 / m.value.to_f64()
}

/// Largest `r` in `1..=r_max` where `r + 2 <= nu_r <= r + 3 + ln r` fails in
/// `f64`, if any.
pub fn nu_bounds_float_violation(r_max: u32) -> Option<u32> {
    MuSequence::with_exact_cap(16)
        .skip(1)
        .take(r_max as usize)
        .filter(|m| {
            let nu = nu_f64(m);
            let r = m.r as f64;
            !(nu >= r + 2.0 && nu <= r + 3.0 + r.ln())
        })
        .map(|m| m.r)
        .last()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_values() {
        assert_eq!(mu(0).value.to_rational(), q(1, 1));
        assert_eq!(mu(1).value.to_rational(), q(1, 2));
        assert_eq!(mu(2).value.to_rational(), q(3, 8));
        assert_eq!(mu(3).value.to_rational(), q(39, 128));
        assert_eq!(mu(3).value.to_string(), "39/2^7");
        assert!(mu(3).exact);
    }

    #[test]
    fn rational_oracle_agrees() {
        // plain BigRational iteration of mu - mu^2/2
        let mut m = q(1, 1);
        for r in 0..=12u32 {
            assert_eq!(mu(r).value.to_rational(), m);
            m = &m - &m * &m / BigRational::from_integer(2.into());
        }
    }

    #[test]
    fn denominators_and_monotonicity() {
        let seq: Vec<Mu> = MuSequence::new().take(16).collect();
        for (r, m) in seq.iter().enumerate() {
            assert_eq!(m.value.log2_denominator(), (1u64 << r) - 1);
            assert!(m.value > DyadicRational::zero());
            assert!(m.value <= DyadicRational::one());
        }
        for w in seq.windows(2) {
            assert!(w[1].value < w[0].value);
        }
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu(0), q(2, 1));
        assert_eq!(nu(1), q(4, 1));
        assert_eq!(nu(2), q(16, 3));
        let (n, d) = nu_by_recurrence(2);
        assert_eq!(BigRational::new(n.into(), d.into()), q(16, 3));
        for r in 0..=14 {
            assert!(nu_paths_agree(r), "r={r}");
        }
    }

    #[test]
    fn nu_bounds_small() {
        let b1 = check_nu_bounds(1);
        // nu_1 = 4 = 1 + 3 + ln 1, equality
        assert!(b1.holds());
        for r in 1..=16 {
            assert!(check_nu_bounds(r).holds(), "r={r}");
        }
    }

    #[test]
    fn exact_through_cap() {
        let seq: Vec<Mu> = MuSequence::new().take(MU_EXACT_CAP as usize + 2).collect();
        for m in &seq[1..] {
            assert!(check_nu_bounds_for(m).holds(), "r={}", m.r);
        }
        let last = &seq[MU_EXACT_CAP as usize];
        assert!(last.exact);
        assert_eq!(last.value.log2_denominator(), (1u64 << MU_EXACT_CAP) - 1);
        assert!(!seq[MU_EXACT_CAP as usize + 1].exact);
    }

    #[test]
    fn fallback_is_flagged_and_close() {
        let seq: Vec<Mu> = MuSequence::with_exact_cap(10).take(40).collect();
        assert!(seq[10].exact);
        assert!(!seq[11].exact);
        assert!(seq[39].value.numerator().bits() <= FALLBACK_MANTISSA_BITS);
        // float recurrence as a loose oracle
        let mut x = 1.0f64;
        for m in &seq {
            assert!((m.value.to_f64() - x).abs() < 1e-12 * x);
            x -= x * x / 2.0;
        }
        assert!(check_nu_bounds_for(&seq[39]).holds());
    }

    #[test]
    fn float_bounds_long_range() {
        assert_eq!(nu_bounds_float_violation(10_000), None);
    }
}
