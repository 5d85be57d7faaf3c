//! High-precision scalar special functions: complex Gamma, Riemann zeta and
//! the completed zeta on the critical strip, K-Bessel functions of imaginary
//! (and general) order, Stirling envelopes, and truncated Laurent-jet
//! arithmetic.

mod bessel;
mod gamma;
mod jet;
mod xi;
mod zeta;

pub use bessel::{bessel_k_complex_order, bessel_k_imag, bessel_k_real_order};
pub use gamma::{digamma_complex, gamma_complex, lgamma_complex, stirling_gamma_modulus};
pub use jet::LaurentJet;
pub use xi::{
    xi, xi_jet_at, xi_laurent_at_1, xi_log_derivative, xi_log_derivative_on_one_line_large,
};
pub use zeta::{zeta, zeta_log_derivative_on_one_line};

use num_complex::Complex64;

/// Refuse evaluation closer than this to a pole instead of returning huge values.
pub const POLE_RADIUS: f64 = 1e-8;

pub(crate) fn near(a: Complex64, b: Complex64, radius: f64) -> bool {
    (a - b).norm() < radius
}
