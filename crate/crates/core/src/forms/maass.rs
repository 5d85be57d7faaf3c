//! Hecke-Maass cusp forms evaluated from their Fourier expansions.

use crate::specfun::bessel_k_imag;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

use super::{truncation_bound, UpperHalfPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Eigendata of a Hecke-Maass cusp form for SL(2, Z): spectral parameter,
/// parity, Hecke eigenvalues lambda(n), and L(1, sym^2).
///
/// The form is evaluated in the L^2-normalized convention, with
/// |rho(1)|^2 = cosh(pi t) / (2 L(1, sym^2)) and the sign of rho(1) fixed
/// positive. `scale` is the load-time rescale factor bringing the quadrature
/// norm to 1 (recorded, defaulting to 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaassForm {
    pub t_j: f64,
    pub parity: Parity,
    pub hecke: Vec<f64>,
    pub l1_sym2: f64,
    pub source_id: String,
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default)]
    pub central_value: Option<f64>,
}

fn default_scale() -> f64 {
    1.0
}

impl MaassForm {
    /// lambda(n); index 1-based.
    pub fn lambda(&self, n: usize) -> f64 {
        self.hecke[n - 1]
    }

    pub fn coefficient_count(&self) -> usize {
        self.hecke.len()
    }

    /// |rho(1)| from the paper's normalization.
    pub fn rho1(&self) -> f64 {
        ((std::f64::consts::PI * self.t_j).cosh() / (2.0 * self.l1_sym2)).sqrt()
    }

    /// Evaluate along a horizontal row y = const at the given x values.
    /// No reduction is applied; callers reduce first when truncation length
    /// matters.
    pub fn eval_row(&self, y: f64, xs: &[f64], eps: f64) -> Result<Vec<f64>> {
        assert!(y > 0.0 && eps > 0.0);
        let n_max = truncation_bound(self.t_j, y, eps * 0.05) + 2;
        if n_max > self.hecke.len() {
            return Err(Error::InsufficientCoefficients {
                have: self.hecke.len(),
                need: n_max,
            });
        }
        let two_pi = 2.0 * std::f64::consts::PI;
        let amp = 4.0 * y.sqrt() * self.rho1() * self.scale;
        let mut terms = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let k = bessel_k_imag(self.t_j, two_pi * n as f64 * y)?;
            terms.push(amp * self.lambda(n) * k);
        }
        Ok(xs
            .iter()
            .map(|&x| {
                let mut acc = 0.0;
                for (i, c) in terms.iter().enumerate() {
                    let arg = two_pi * (i + 1) as f64 * x;
                    acc += c * match self.parity {
                        Parity::Even => arg.cos(),
                        Parity::Odd => arg.sin(),
                    };
                }
                acc
            })
            .collect())
    }

    /// Evaluate at a point, after reduction to the fundamental domain.
    pub fn eval(&self, z: UpperHalfPoint, eps: f64) -> Result<f64> {
        let r = z.reduced();
        Ok(self.eval_row(r.y, &[r.x], eps)?[0])
    }
}
