//! Iteration of quadratic polynomials over odd prime fields.
//!
//! The crate computes, exactly, the quantities that govern the image sizes
//! `#f^r(F_p)` of iterates of `f(X) = aX^2 + c`:
//!
//! - [`field`]: prime-field arithmetic and the map families `aX^2 + c`,
//!   `X^3 + c` and general quadratics;
//! - [`orbit`]: tail/cycle shapes, cubic permutation cycles and the
//!   critical orbit of 0;
//! - [`image`]: iterate images, preimage-count histograms and moments;
//! - [`exact`]: the dyadic recurrences for the limiting densities, the
//!   curve counts, their exponential weights and the indicator coefficients;
//! - [`graph`]: proper weighted complete graphs, their split partitions,
//!   chains and closures;
//! - [`harness`]: sweeps, the cubic cycle-length table, Pollard rho and
//!   report serialization.

pub mod error;
pub mod exact;
pub mod field;
pub mod graph;
pub mod harness;
pub mod image;
pub mod nt;
pub mod orbit;
pub mod rng;

pub use error::{Error, Result};
