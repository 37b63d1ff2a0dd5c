//! Scalar domains and the gamma/beta/combinatorial primitives.

pub mod bigfloat;
pub mod combinatorics;
pub mod gamma;
pub mod scalar;

pub use bigfloat::{BigFloat, MIN_PRECISION};
pub use combinatorics::{binomial, compositions, factorial, generalized_binomial, multinomial};
pub use gamma::{beta, gamma, gamma_scalar, reciprocal_gamma, reciprocal_gamma_scalar};
pub use scalar::Scalar;

/// Working precision used when none is requested.
pub const DEFAULT_PRECISION: u32 = 128;
