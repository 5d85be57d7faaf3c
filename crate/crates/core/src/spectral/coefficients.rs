//! Spectral coefficients of a compactly supported test function against the
//! constant, the cusp forms of a basis, and the Eisenstein grid:
//! <psi, 1>, <psi, u_j>, and <psi, E_tau> = int psi E(z, 1/2 - i tau) d mu.

use super::SpectralBasis;
use crate::forms::{EisensteinParams, EisensteinSeries, MaassForm};
use crate::quadrature::{integrate_domain, QuadratureSpec, TestFunction};
use crate::Result;
use num_complex::Complex64;

/// Coefficients aligned with the basis: `cusp[j]` pairs with
/// `basis.forms()[j]`, `eisenstein[k]` with `basis.eisenstein_grid()[k]`.
#[derive(Debug, Clone)]
pub struct SpectralCoefficients {
    pub constant: Complex64,
    pub cusp: Vec<Complex64>,
    pub eisenstein: Vec<Complex64>,
    pub error_estimate: f64,
}

fn weighted_integral<G>(
    psi: &TestFunction,
    weight: G,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)>
where
    G: Fn(f64, &[f64]) -> Result<Vec<Complex64>> + Sync,
{
    let rows = |y: f64, xs: &[f64]| {
        let base = psi.eval_row(y, xs);
        if base.iter().all(|v| v.norm() == 0.0) {
            return Ok(base);
        }
        let w = weight(y, xs)?;
        Ok(base.iter().zip(w).map(|(b, w)| b * w).collect())
    };
    let out = integrate_domain(&rows, spec)?;
    Ok((out.value, out.error_estimate))
}

/// <psi, u_j> for one form.
pub fn cusp_coefficient(
    psi: &TestFunction,
    form: &MaassForm,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let s = spec.with_oscillation(spec.osc_hint.max(form.t_j));
    weighted_integral(
        psi,
        |y, xs| Ok(form.eval_row(y, xs, 1e-12)?.iter().map(|&v| Complex64::new(v, 0.0)).collect()),
        &s,
    )
}

/// <psi, E_tau> = int psi E(z, 1/2 - i tau) d mu (conjugate-in-second-slot).
pub fn eisenstein_coefficient(
    psi: &TestFunction,
    tau: f64,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64)> {
    let series = EisensteinSeries::new(EisensteinParams::critical_line(-tau)?)?;
    let s = spec.with_oscillation(spec.osc_hint.max(tau.abs()));
    weighted_integral(psi, |y, xs| series.eval_row(y, xs, 1e-12), &s)
}

/// All spectral coefficients of psi against the basis.
pub fn spectral_coefficients(
    psi: &TestFunction,
    basis: &SpectralBasis,
    spec: &QuadratureSpec,
) -> Result<SpectralCoefficients> {
    let (constant, mut err) = weighted_integral(
        psi,
        |_, xs| Ok(vec![Complex64::new(1.0, 0.0); xs.len()]),
        spec,
    )?;
    let mut cusp = Vec::with_capacity(basis.forms().len());
    for form in basis.forms() {
        let (v, e) = cusp_coefficient(psi, form, spec)?;
        cusp.push(v);
        err += e;
    }
    let mut eisenstein = Vec::with_capacity(basis.eisenstein_grid().len());
    for &tau in basis.eisenstein_grid() {
        let (v, e) = eisenstein_coefficient(psi, tau, spec)?;
        eisenstein.push(v);
        err += e;
    }
    Ok(SpectralCoefficients {
        constant,
        cusp,
        eisenstein,
        error_estimate: err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Parity, UpperHalfPoint};
    use crate::ingest::load_fixtures;
    use crate::quadrature::integrate_domain;

    fn fixtures() -> SpectralBasis {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/maass");
        load_fixtures(&dir).unwrap().0
    }

    fn wide_bump() -> TestFunction {
        TestFunction::new(UpperHalfPoint::new(0.0, 1.40), 0.33).unwrap()
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(8.0, 1e-7, 60_000_000).unwrap()
    }

    #[test]
    fn odd_forms_decouple_from_symmetric_bump() {
        let basis = fixtures();
        let psi = wide_bump();
        let odd = basis
            .forms()
            .iter()
            .find(|f| f.parity == Parity::Odd)
            .unwrap();
        let (c, _) = cusp_coefficient(&psi, odd, &spec()).unwrap();
        assert!(c.norm() < 1e-12, "odd pairing {c:?}");
    }

    #[test]
    fn cusp_pairing_satisfies_eigenfunction_identity() {
        // <Delta psi, u_j> = lambda_j <psi, u_j> with lambda_j = 1/4 + t_j^2
        let basis = fixtures();
        let psi = wide_bump();
        let even = basis
            .forms()
            .iter()
            .find(|f| f.parity == Parity::Even)
            .unwrap();
        let s = spec();
        let (c, _) = cusp_coefficient(&psi, even, &s).unwrap();
        let rows = |y: f64, xs: &[f64]| {
            let lap = psi.laplacian_row(y, xs, 1)?;
            if lap.iter().all(|v| v.norm() == 0.0) {
                return Ok(lap);
            }
            let u = even.eval_row(y, xs, 1e-12)?;
            Ok(lap.iter().zip(u).map(|(l, u)| l * u).collect())
        };
        let lhs = integrate_domain(&rows, &s).unwrap().value;
        let lambda = 0.25 + even.t_j * even.t_j;
        assert!(
            (lhs - lambda * c).norm() < 1e-4 * (lambda * c).norm(),
            "lhs {lhs:?} vs {:?}",
            lambda * c
        );
    }

    #[test]
    fn laplacian_decay_bound_over_fixture_forms() {
        // |<psi, u_j>| (1/4 + t_j^2)^l <= ||Delta^l psi||_2 for l = 1, 2
        let basis = fixtures();
        let psi = wide_bump();
        let s = spec();
        for l in [1u32, 2] {
            let rows = |y: f64, xs: &[f64]| {
                let v = psi.laplacian_row(y, xs, l)?;
                Ok(v.iter().map(|a| a * a).collect())
            };
            let c_l = integrate_domain(&rows, &s).unwrap().value.re.sqrt();
            for form in basis.forms() {
                let (c, _) = cusp_coefficient(&psi, form, &s).unwrap();
                let lambda = 0.25 + form.t_j * form.t_j;
                assert!(
                    c.norm() * lambda.powi(l as i32) <= c_l * 1.001,
                    "l = {l}, t_j = {}",
                    form.t_j
                );
            }
        }
    }

    #[test]
    fn eisenstein_coefficient_conjugation() {
        let psi = wide_bump();
        let s = spec();
        let (a, _) = eisenstein_coefficient(&psi, 3.6, &s).unwrap();
        let (b, _) = eisenstein_coefficient(&psi, -3.6, &s).unwrap();
        assert!((a - b.conj()).norm() < 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn eisenstein_envelope_eventually_decays() {
        let psi = wide_bump();
        let s = spec();
        let envelope = |tau: f64| (1.0 + tau.abs()).powf(0.425);
        let mut near = 0.0f64;
        for k in 0..30 {
            let tau = 0.25 + 0.5 * k as f64;
            let (c, _) = eisenstein_coefficient(&psi, tau, &s).unwrap();
            near = near.max(c.norm() / envelope(tau));
        }
        for &tau in &[26.25f64, 28.25, 30.25] {
            let (c, _) = eisenstein_coefficient(&psi, tau, &s).unwrap();
            assert!(c.norm() / envelope(tau) < near);
        }
    }

    #[test]
    fn coefficients_align_with_basis_layout() {
        let full = fixtures();
        let forms: Vec<_> = full
            .forms()
            .iter()
            .filter(|f| f.t_j < 14.0)
            .cloned()
            .collect();
        let basis = SpectralBasis::new(forms, 14.0, 3.5).unwrap();
        let psi = wide_bump();
        let out = spectral_coefficients(&psi, &basis, &spec()).unwrap();
        assert_eq!(out.cusp.len(), basis.forms().len());
        assert_eq!(out.eisenstein.len(), basis.eisenstein_grid().len());
        assert!(out.constant.norm() > 0.0);
        assert!(out.error_estimate.is_finite());
    }
}
