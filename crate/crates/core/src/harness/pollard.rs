//! Pollard's rho method with Floyd pairing.
//!
//! Iterates `f(X) = aX^2 + c` modulo a composite `N` and at each step `j`
//! takes `gcd(f^j(m) - f^{2j}(m), N)`. A prime `q | N` divides the
//! difference once `j` is a multiple of the cycle length of the orbit mod `q`
//! that exceeds its tail, so the first such `j` is at most `t + c`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Modulus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RhoFailure {
    /// Every prime factor was caught at the same step.
    GcdHitN { step: u64 },
    StepsExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum RhoOutcome {
    /// A divisor `1 < d < N`.
    Factor(u64),
    Failure(RhoFailure),
}

/// One rho run from the seed `m` with `f(X) = aX^2 + c mod n`.
pub fn pollard_rho(n: u64, a: u64, c: u64, m: u64, max_steps: u64) -> Result<RhoOutcome> {
    if n <= 1 || n.is_multiple_of(2) {
        return Err(Error::BadRhoModulus(n));
    }
    let modulus = Modulus::new(n)?;
    let (a, c) = (modulus.reduce(a), modulus.reduce(c));
    let f = |x: u64| {
        let sq = modulus.square(x);
        modulus.add(modulus.mul(a, sq), c)
    };
    let mut slow = modulus.reduce(m);
    let mut fast = slow;
    for step in 1..=max_steps {
        slow = f(slow);
        fast = f(f(fast));
        let g = slow.abs_diff(fast).gcd(&n);
        if g == n {
            return Ok(RhoOutcome::Failure(RhoFailure::GcdHitN { step }));
        }
        if g > 1 {
            return Ok(RhoOutcome::Factor(g));
        }
    }
    Ok(RhoOutcome::Failure(RhoFailure::StepsExhausted))
}

/// Restarts allowed after the first attempt fails.
pub const DEFAULT_RESTARTS: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    pub n: u64,
    pub outcome: RhoOutcome,
    /// Values of `c` tried, in order.
    pub constants_tried: Vec<u64>,
    pub cofactor: Option<u64>,
}

/// Runs [`pollard_rho`], retrying with `c + 1, c + 2, ...` on failure, for at
/// most `restarts` extra attempts.
pub fn factor_with_restarts(
    n: u64,
    a: u64,
    c: u64,
    m: u64,
    max_steps: u64,
    restarts: u32,
) -> Result<RhoReport> {
    let mut tried = Vec::new();
    let mut outcome = RhoOutcome::Failure(RhoFailure::StepsExhausted);
    for attempt in 0..=restarts as u64 {
        let c_now = c.wrapping_add(attempt);
        tried.push(c_now);
        outcome = pollard_rho(n, a, c_now, m, max_steps)?;
        if matches!(outcome, RhoOutcome::Factor(_)) {
            break;
        }
    }
    let cofactor = match outcome {
        RhoOutcome::Factor(d) => Some(n / d),
        RhoOutcome::Failure(_) => None,
    };
    Ok(RhoReport {
        n,
        outcome,
        constants_tried: tried,
        cofactor,
    })
}
