//! Exact rational arithmetic for the limiting densities, curve counts,
//! exponential weights and the zero-indicator coefficients.

pub mod coeffs;
pub mod curves;
pub mod dyadic;
pub mod logbound;
pub mod mu;
pub mod weights;

pub use coeffs::{falling_coeffs, CoefficientVector, FALLING_COEFFS_MAX_R};
pub use curves::{curve_count, curve_count_bound, CurveCountTable};
pub use dyadic::DyadicRational;
pub use logbound::ln_enclosure;
pub use mu::{
    check_nu_bounds, check_nu_bounds_for, mu, nu, nu_bounds_float_violation, nu_by_recurrence,
    nu_paths_agree, nu_paths_agree_for, Mu, MuSequence, NuBounds, FALLBACK_MANTISSA_BITS, MU_EXACT_CAP,
};
pub use weights::{
    moment_from_weights, nu_weights, nu_zero, ExpWeightVector, NU_WEIGHTS_MAX_R,
};
