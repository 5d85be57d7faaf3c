//! Quadrature over the modular surface: tensor grids on the truncated
//! fundamental domain, constant-term extraction, Mellin unfolding, compactly
//! supported test functions, and both Zagier regularized integrals.

mod bump;
mod domain;
mod mellin;
mod regularized;

pub use bump::TestFunction;
pub use domain::{constant_term, integrate_domain};
pub use mellin::unfold_mellin;
pub use regularized::{
    regularized_integral_residue, regularized_integral_subtract, ProfileTerm, RenormProfile,
};

use crate::{Error, Result};
use num_complex::Complex64;

/// Controls for domain quadrature: truncation height, accuracy target, an
/// evaluation budget, and a hint for the largest oscillation frequency of the
/// integrand (the sum of the spectral parameters of a product of forms).
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub y_max: f64,
    pub target_eps: f64,
    pub max_evals: usize,
    pub osc_hint: f64,
}

impl QuadratureSpec {
    pub fn new(y_max: f64, target_eps: f64, max_evals: usize) -> Result<Self> {
        if !(y_max >= 2.0) {
            return Err(Error::Invalid(format!(
                "truncation height y_max = {y_max} must be at least 2"
            )));
        }
        if !(target_eps > 0.0) {
            return Err(Error::Invalid("target_eps must be positive".into()));
        }
        Ok(QuadratureSpec {
            y_max,
            target_eps,
            max_evals,
            osc_hint: 0.0,
        })
    }

    pub fn with_oscillation(mut self, osc: f64) -> Self {
        self.osc_hint = osc.abs();
        self
    }
}

/// Outcome of a domain integral. `tail` is the modeled contribution from
/// above the truncation height, already included in `value`. A blown budget
/// is flagged, not an error: the best value so far is still returned.
#[derive(Debug, Clone, Copy)]
pub struct DomainIntegral {
    pub value: Complex64,
    pub error_estimate: f64,
    pub tail: Complex64,
    pub evals: usize,
    pub budget_exceeded: bool,
}

/// An integrand evaluated along horizontal rows y = const, so implementations
/// can share Bessel values across the x nodes of a row.
pub trait RowIntegrand: Sync {
    fn eval_row(&self, y: f64, xs: &[f64]) -> Result<Vec<Complex64>>;
}

impl<T> RowIntegrand for T
where
    T: Fn(f64, &[f64]) -> Result<Vec<Complex64>> + Sync,
{
    fn eval_row(&self, y: f64, xs: &[f64]) -> Result<Vec<Complex64>> {
        self(y, xs)
    }
}
