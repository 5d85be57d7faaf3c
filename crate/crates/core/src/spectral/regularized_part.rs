//! The constant term of the regularized spectral weight near the critical
//! point: two completed-zeta factors with colliding simple poles whose
//! residues cancel, leaving a finite limit that grows like log t.
//!
//! The quantity is
//!
//!   S(eta) = xi(1 + eta) F1(eta) + xi(1 - eta) F2(eta),
//!   F1(eta) = rho^2 phi Lam(1 + eta) / xi(2 + 2 eta),
//!   F2(eta) = rho^2 [xi(2it + 2 eta) / xi(1 + 2it + 2 eta)]
//!             Lam(1 - eta) / xi(2 - 2 eta),
//!
//! with phi = xi(2it)/xi(1+2it) and Lam(s) the completed symmetric-square
//! value of the fixed cusp form; the product rho^2 Lam(1) equals 1/2 exactly,
//! so the form enters only through the local slope Lam'/Lam(1).

use crate::specfun::{
    xi, xi_jet_at, xi_laurent_at_1, xi_log_derivative, xi_log_derivative_on_one_line_large,
    LaurentJet,
};
use crate::{Error, Result};
use num_complex::Complex64;

const JET_ORDER: i32 = 4;

fn gate(t: f64) -> Result<()> {
    if t.abs() < 0.01 {
        return Err(Error::NearPole {
            location: "eta = 0 with 2it on the pole of xi".into(),
            radius: 0.01,
        });
    }
    if t.abs() > 200.0 {
        return Err(Error::OutOfRegime(format!(
            "contour evaluation of xi needs |t| <= 200, got {t}"
        )));
    }
    Ok(())
}

/// Substitute delta -> c eta in a jet expressed in the local variable delta.
fn rescale_variable(jet: &LaurentJet, c: Complex64) -> LaurentJet {
    let lo = jet.lowest_order();
    let coeffs = jet
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| a * c.powi(lo + j as i32))
        .collect();
    LaurentJet::new(lo, coeffs)
}

/// The germ of rho^2 Lam(1 + sign eta) = (1/2) exp(sign slope eta).
fn half_exp_jet(slope: f64, sign: f64) -> LaurentJet {
    LaurentJet::monomial(1, JET_ORDER)
        .scale(Complex64::new(sign * slope, 0.0))
        .exp()
        .expect("no pole part")
        .scale(Complex64::new(0.5, 0.0))
}

fn f_factor_jets(t: f64, lambda_slope: f64) -> Result<(LaurentJet, LaurentJet)> {
    gate(t)?;
    let order = JET_ORDER as usize;
    let two = Complex64::new(2.0, 0.0);
    let xi_2p = rescale_variable(&xi_jet_at(Complex64::new(2.0, 0.0), order)?, two);
    let xi_2m = rescale_variable(&xi_jet_at(Complex64::new(2.0, 0.0), order)?, -two);
    let xi_0t = rescale_variable(&xi_jet_at(Complex64::new(0.0, 2.0 * t), order)?, two);
    let xi_1t = rescale_variable(&xi_jet_at(Complex64::new(1.0, 2.0 * t), order)?, two);
    let phi = xi_0t.coeff(0) / xi_1t.coeff(0);

    let f1 = half_exp_jet(lambda_slope, 1.0).scale(phi).div(&xi_2p)?;
    let f2 = half_exp_jet(lambda_slope, -1.0)
        .mul(&xi_0t)
        .div(&xi_1t)?
        .div(&xi_2m)?;
    Ok((f1, f2))
}

/// The constant terms (A0, B0) of the factor functions F1, F2.
pub fn f_factor_constants(t: f64, lambda_slope: f64) -> Result<(Complex64, Complex64)> {
    let (f1, f2) = f_factor_jets(t, lambda_slope)?;
    Ok((f1.coeff(0), f2.coeff(0)))
}

/// The full Laurent jet of S(eta) at eta = 0.
pub fn regularized_part_jet(t: f64, lambda_slope: f64) -> Result<LaurentJet> {
    let (f1, f2) = f_factor_jets(t, lambda_slope)?;
    let xi_1p = xi_laurent_at_1(JET_ORDER)?;
    let xi_1m = xi_1p.reflect();
    Ok(xi_1p.mul(&f1).add(&xi_1m.mul(&f2)))
}

/// The finite limit S(0) and a structural flag confirming that the two
/// simple poles cancelled (the eta^{-1} coefficient vanished relative to the
/// constant term) rather than the limit arising numerically by accident.
pub fn regularized_part_constant(t: f64, lambda_slope: f64) -> Result<(Complex64, bool)> {
    let jet = regularized_part_jet(t, lambda_slope)?;
    let s0 = jet.coeff(0);
    let residue = if jet.lowest_order() <= -1 {
        jet.coeff(-1).norm()
    } else {
        0.0
    };
    let cancelled = residue <= 1e-8 * (1.0 + s0.norm());
    Ok((s0, cancelled))
}

/// Closed form for the same limit:
///
///   S(0) = phi / xi(2) [ xi'/xi(1-2it) + xi'/xi(1+2it)
///                        + Lam'/Lam - 2 xi'/xi(2) + a0 ],
///
/// where a0 is the constant Laurent coefficient of xi at 1 (the residue
/// there is 1 in this normalization).
pub fn regularized_part_closed_form(t: f64, lambda_slope: f64) -> Result<Complex64> {
    gate(t)?;
    let phi = xi(Complex64::new(0.0, 2.0 * t))? / xi(Complex64::new(1.0, 2.0 * t))?;
    let xi2 = xi(Complex64::new(2.0, 0.0))?;
    let a0 = xi_laurent_at_1(1)?.coeff(0);
    let bracket = xi_log_derivative(Complex64::new(1.0, -2.0 * t))?
        + xi_log_derivative(Complex64::new(1.0, 2.0 * t))?
        + lambda_slope
        - 2.0 * xi_log_derivative(Complex64::new(2.0, 0.0))?
        + a0;
    Ok(phi / xi2 * bracket)
}

/// |S(0)| for heights beyond the contour gate, via the smoothed one-line
/// log derivative. |phi| = 1 drops out of the modulus; the two conjugate
/// xi'/xi terms contribute 2 Re xi'/xi(1+2it) ~ log t.
pub fn regularized_part_magnitude_large(t: f64, lambda_slope: f64) -> Result<f64> {
    let xi2 = xi(Complex64::new(2.0, 0.0))?;
    let a0 = xi_laurent_at_1(1)?.coeff(0);
    let ld = xi_log_derivative_on_one_line_large(2.0 * t.abs(), 2e4)?;
    let bracket = ld.conj() + ld + lambda_slope
        - 2.0 * xi_log_derivative(Complex64::new(2.0, 0.0))?
        + a0;
    Ok(bracket.norm() / xi2.norm())
}
