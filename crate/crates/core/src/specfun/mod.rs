//! Special-function kernels.

mod bessel;
mod elliptic;
mod gamma;

pub use bessel::{bessel_j, spherical_j, Order};
pub use elliptic::{elliptic_k, elliptic_k_complementary};
pub use gamma::{binomial, gamma, ln_gamma, ln_pochhammer, reciprocal_gamma, sin_pi};

pub(crate) use bessel::{bessel_j_raw, hankel_coefficients, mcmahon_zero};
pub(crate) use gamma::{digamma_positive_integer, is_nonpositive_integer};
