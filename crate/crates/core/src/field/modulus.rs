//! Modular arithmetic for a fixed odd 64-bit modulus.
//!
//! Two reduction strategies are picked at construction time:
//!
//! - moduli below 2^32 use Barrett reduction of the 64-bit product with the
//!   precomputed reciprocal `floor(2^64 / n)`;
//! - larger moduli use Montgomery multiplication with `R = 2^64`, converting
//!   back to canonical residues with one extra multiplication by `R^2 mod n`.
//!
//! Neither path issues a hardware division per multiplication. Inputs and
//! outputs are always canonical residues in `[0, n)`.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Reduction {
    /// `reciprocal = floor(2^64 / n)`.
    Barrett { reciprocal: u64 },
    /// `neg_inv = -n^{-1} mod 2^64`, `r2 = 2^128 mod n`.
    Montgomery { neg_inv: u64, r2: u64 },
}

/// An odd modulus `n >= 3` with precomputed reduction constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    reduction: Reduction,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::BadModulus(n));
        }
        let reduction = if n < (1 << 32) {
            Reduction::Barrett {
                reciprocal: u64::MAX / n,
            }
        } else {
            let mut inv = n; // correct to 3 bits for odd n
            for _ in 0..5 {
                inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
            }
            let r1 = ((1u128 << 64) % n as u128) as u64;
            let r2 = ((r1 as u128 * r1 as u128) % n as u128) as u64;
            Reduction::Montgomery {
                neg_inv: inv.wrapping_neg(),
                r2,
            }
        };
        Ok(Self { n, reduction })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.n
    }

    /// Reduces an arbitrary `u64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        match self.reduction {
            Reduction::Barrett { reciprocal } => self.barrett(x, reciprocal),
            Reduction::Montgomery { .. } => x % self.n,
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.n && b < self.n);
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.n && b < self.n);
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.n)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.n && b < self.n);
        match self.reduction {
            Reduction::Barrett { reciprocal } => self.barrett(a * b, reciprocal),
            Reduction::Montgomery { neg_inv, r2 } => {
                let t = self.redc(a as u128 * b as u128, neg_inv);
                self.redc(t as u128 * r2 as u128, neg_inv)
            }
        }
    }

    #[inline]
    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.n;
        base = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    fn barrett(&self, x: u64, reciprocal: u64) -> u64 {
        let q = ((x as u128 * reciprocal as u128) >> 64) as u64;
        let r = x - q * self.n;
        if r >= self.n {
            r - self.n
        } else {
            r
        }
    }

    /// Montgomery reduction of `t < n * 2^64`, returning `t / 2^64 mod n`.
    #[inline]
    fn redc(&self, t: u128, neg_inv: u64) -> u64 {
        let t_lo = t as u64;
        let t_hi = (t >> 64) as u64;
        let m = t_lo.wrapping_mul(neg_inv);
        let mn = m as u128 * self.n as u128;
        // t_lo + lo(mn) is 0 mod 2^64; only its carry survives
        let carry = t_lo.overflowing_add(mn as u64).1 as u64;
        let (s, o1) = t_hi.overflowing_add((mn >> 64) as u64);
        let (s, o2) = s.overflowing_add(carry);
        if o1 || o2 || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }
}

/// Reference multiplication through 128-bit division.
#[inline]
pub fn mul_mod_naive(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}
