use thiserror::Error;

use crate::orbit::CollisionPair;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} must be odd and at least 3")]
    BadModulus(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("element bound to modulus {found} used with modulus {expected}")]
    ContextMismatch { expected: u64, found: u64 },
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("x^3 + c is a permutation only when p = 2 mod 3, got p = {0}")]
    NotCubicPermutation(u64),
    #[error("level d = {0} is below -1")]
    InvalidLevel(i64),
    #[error("cycle-length prediction needs a nonzero element, got 0")]
    ZeroElement,
    #[error("element {m} has even multiplicative order {order} mod {p}")]
    EvenOrder { m: u64, p: u64, order: u64 },
    #[error("image bit vector of {needed} bytes exceeds the memory budget of {budget} bytes")]
    MemoryBudget { needed: u64, budget: u64 },
    #[error("coefficient vector is for r = {found}, expected r = {expected}")]
    CoefficientMismatch { expected: u32, found: u32 },
    #[error("non-integral result in {0}")]
    NonIntegral(&'static str),
    #[error("distinctness hypothesis fails: f^{}(0) = f^{}(0)", .0.i, .0.j)]
    HypothesisFails(CollisionPair),
    #[error("r = {r} exceeds the supported cap {cap} for {what}")]
    CapExceeded { what: &'static str, r: u32, cap: u32 },
    #[error("enumeration of {needed} assignments exceeds the budget of {budget}")]
    EnumerationBudget { needed: u128, budget: u128 },
    #[error("graph on {0} vertices is outside the supported range 1..=8")]
    VertexCount(usize),
    #[error("weight {weight} outside [-1, {max}]")]
    WeightOutOfRange { weight: i8, max: i8 },
    #[error("graph is not proper")]
    NotProper,
    #[error("graph is not strict or has D < 0 or fewer than 2 vertices")]
    NotStrict,
    #[error("closure stopped with {missing} edge(s) missing")]
    ClosureIncomplete { missing: usize },
    #[error("point {0} does not share the common value of f^r")]
    NotOnDiagonal(u32),
    #[error("solution graph violates properness")]
    ImproperSolutionGraph,
    #[error("modulus {0} for Pollard rho must be odd and greater than 1")]
    BadRhoModulus(u64),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
