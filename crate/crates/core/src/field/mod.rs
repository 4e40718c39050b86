//! Odd prime fields and the polynomial maps iterated over them.

mod maps;
pub mod modulus;
pub mod primality;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
pub use maps::{
    translate_general_quadratic, verify_factorization, verify_factorization_sampled, CubicMap,
    FactorizationMode, GeneralQuadratic, PolyMap, QuadMap,
};
pub use modulus::{mul_mod_naive, Modulus};
pub use primality::is_prime;

/// Arithmetic context for `F_p` with `p` an odd prime.
///
/// Cheap to copy and safe to share across threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    modulus: Modulus,
}

impl FieldContext {
    /// Builds the context, rejecting even, composite and tiny moduli.
    pub fn new(p: u64) -> Result<Self> {
        let modulus = Modulus::new(p)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.modulus.value()
    }

    #[inline]
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// The element `v mod p`.
    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement {
            value: self.modulus.reduce(v),
            p: self.p(),
        }
    }

    /// The element `v mod p` for a signed representative.
    pub fn element_i64(&self, v: i64) -> FieldElement {
        let r = (v as i128).rem_euclid(self.p() as i128) as u64;
        self.wrap(r)
    }

    /// Unwraps an element after checking it belongs to this field.
    #[inline]
    pub fn bind(&self, x: FieldElement) -> Result<u64> {
        if x.p != self.p() {
            return Err(Error::ContextMismatch {
                expected: self.p(),
                found: x.p,
            });
        }
        Ok(x.value)
    }

    #[inline]
    pub(crate) fn wrap(&self, v: u64) -> FieldElement {
        debug_assert!(v < self.p());
        FieldElement { value: v, p: self.p() }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.modulus.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.modulus.sub(a, b)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.modulus.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.modulus.neg(a)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        self.modulus.pow(a, e)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p() - 2))
    }
}

/// A canonical residue tagged with the prime it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement {
    value: u64,
    p: u64,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
