//! Archimedean Gamma factors L_inf(s) = pi^{p s} prod_k Gamma((s + mu_k) / 2).

use crate::specfun::{gamma_complex, lgamma_complex};
use crate::{Complex64, Result};
use std::f64::consts::PI;

use crate::forms::{MaassForm, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaKind {
    Zeta,
    Gl2,
    RankinSelberg,
    Sym2,
    EisensteinXGl2,
    Gl3xGl2,
}

/// Archimedean factor pi^{pi_power * s} prod_k Gamma((s + shifts[k]) / 2).
#[derive(Debug, Clone)]
pub struct GammaFactorSpec {
    pub kind: GammaKind,
    pub shifts: Vec<Complex64>,
    pub pi_power: f64,
}

fn ix(t: f64) -> Complex64 {
    Complex64::new(0.0, t)
}

fn eps_of(parity: Parity) -> f64 {
    match parity {
        Parity::Even => 0.0,
        Parity::Odd => 1.0,
    }
}

impl GammaFactorSpec {
    /// zeta_inf(s) = pi^{-s/2} Gamma(s/2).
    pub fn zeta() -> Self {
        Self {
            kind: GammaKind::Zeta,
            shifts: vec![Complex64::new(0.0, 0.0)],
            pi_power: -0.5,
        }
    }

    /// L_inf(s, phi) = pi^{-s} Gamma((s + eps + it)/2) Gamma((s + eps - it)/2)
    /// with eps = 0 for even forms and 1 for odd.
    pub fn gl2(t: f64, parity: Parity) -> Self {
        let e = eps_of(parity);
        Self {
            kind: GammaKind::Gl2,
            shifts: vec![
                Complex64::new(e, t),
                Complex64::new(e, -t),
            ],
            pi_power: -1.0,
        }
    }

    /// L_inf(s, f x g) = pi^{-2s} prod_{++,+-,-+,--} Gamma((s +- it_f +- it_g)/2).
    pub fn rankin_selberg(t_f: f64, t_g: f64) -> Self {
        Self {
            kind: GammaKind::RankinSelberg,
            shifts: vec![
                ix(t_f + t_g),
                ix(t_f - t_g),
                ix(-t_f + t_g),
                ix(-t_f - t_g),
            ],
            pi_power: -2.0,
        }
    }

    /// L_inf(s, sym^2 phi) = pi^{-3s/2} Gamma(s/2) Gamma((s + 2it)/2)
    /// Gamma((s - 2it)/2).
    pub fn sym2(t: f64) -> Self {
        Self {
            kind: GammaKind::Sym2,
            shifts: vec![Complex64::new(0.0, 0.0), ix(2.0 * t), ix(-2.0 * t)],
            pi_power: -1.5,
        }
    }

    /// L_inf(s, E_t x phi) = pi^{-2s} prod Gamma((s + eps +- it +- it_phi)/2),
    /// the product of the two shifted GL(2) factors of phi.
    pub fn eisenstein_x_gl2(t: f64, t_phi: f64, parity: Parity) -> Self {
        let e = eps_of(parity);
        Self {
            kind: GammaKind::EisensteinXGl2,
            shifts: vec![
                Complex64::new(e, t + t_phi),
                Complex64::new(e, t - t_phi),
                Complex64::new(e, -t + t_phi),
                Complex64::new(e, -t - t_phi),
            ],
            pi_power: -2.0,
        }
    }

    /// L_inf(s, phi_j x sym^2 phi): pi^{-3s} times six Gamma factors with
    /// shifts +-it_j, 2it_phi +- it_j, -2it_phi +- it_j.
    pub fn gl3xgl2(t_j: f64, t_phi: f64) -> Self {
        Self {
            kind: GammaKind::Gl3xGl2,
            shifts: vec![
                ix(t_j),
                ix(-t_j),
                ix(2.0 * t_phi + t_j),
                ix(2.0 * t_phi - t_j),
                ix(-2.0 * t_phi + t_j),
                ix(-2.0 * t_phi - t_j),
            ],
            pi_power: -3.0,
        }
    }

    pub fn from_form(form: &MaassForm) -> Self {
        Self::gl2(form.t_j, form.parity)
    }

    pub fn degree(&self) -> usize {
        self.shifts.len()
    }

    /// pi^{pi_power s} prod_k Gamma((s + mu_k)/2). Errs near a Gamma pole.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let mut v = (self.pi_power * s * PI.ln()).exp();
        for &mu in &self.shifts {
            v *= gamma_complex((s + mu) / 2.0)?;
        }
        Ok(v)
    }

    /// ln |L_inf(s)|, stable for large parameters where eval overflows.
    pub fn log_modulus(&self, s: Complex64) -> Result<f64> {
        let mut v = self.pi_power * s.re * PI.ln();
        for &mu in &self.shifts {
            v += lgamma_complex((s + mu) / 2.0)?.re;
        }
        Ok(v)
    }
}

/// prod_k (1 + |s + mu_k|) / 2, the analytic conductor used for truncation
/// lengths and the approximate-functional-equation gate.
pub fn analytic_conductor(gamma: &GammaFactorSpec, s: Complex64) -> f64 {
    gamma
        .shifts
        .iter()
        .map(|&mu| (1.0 + (s + mu).norm()) / 2.0)
        .product()
}
