//! Smoothed approximate functional equation for completed L-values in the
//! central strip, with the cutoff
//! V_s(n) = (1/2 pi i) int_{Re u = 2} exp(u^2) L_inf(s + u) n^{-u} du / u
//! realized by a 64-point truncated trapezoid rule, so that
//! Lambda(s) = sum_n b(n) [n^{-s} V_s(n) + omega n^{-(1-s)} V_{1-s}(n)]
//! minus the pole contributions exp((1-s)^2)/(1-s) + exp(s^2)/s for zeta.

use crate::specfun::lgamma_complex;
use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

use super::gamma::{analytic_conductor, GammaFactorSpec};
use super::series::{d4_tail_bound, LKind, LSeries};

const CONDUCTOR_GATE: f64 = 1.0e6;
const NODES: usize = 64;
const HALF_WIDTH: f64 = 6.0;
const CONTOUR_RE: f64 = 2.0;

fn g(u: Complex64) -> Complex64 {
    (u * u).exp()
}

/// One leg of the AFE: the trapezoid weights of V_w(n) = sum_k w_k n^{-u_k}
/// with u_k = 2 + i v_k, plus data for certified truncation-tail bounds.
struct Leg {
    w_exponent: Complex64,
    step_im: f64,
    weights: Vec<Complex64>,
}

impl Leg {
    fn new(gamma: &GammaFactorSpec, w: Complex64) -> Result<Self> {
        let h = 2.0 * HALF_WIDTH / (NODES - 1) as f64;
        let mut weights = Vec::with_capacity(NODES);
        for j in 0..NODES {
            let v = -HALF_WIDTH + j as f64 * h;
            let u = Complex64::new(CONTOUR_RE, v);
            let hw = if j == 0 || j == NODES - 1 { 0.5 * h } else { h };
            weights.push(g(u) * gamma.eval(w + u)? / u * (hw / (2.0 * PI)));
        }
        Ok(Self {
            w_exponent: w,
            step_im: h,
            weights,
        })
    }

    /// b-weighted term b n^{-w} V_w(n).
    fn term(&self, b: Complex64, n: usize) -> Complex64 {
        let ln_n = (n as f64).ln();
        let base = (-(self.w_exponent + CONTOUR_RE) * ln_n).exp();
        // n^{-i v_j} by recurrence along the equally spaced nodes
        let mut phase = Complex64::new(0.0, HALF_WIDTH * ln_n).exp();
        let step = Complex64::new(0.0, -self.step_im * ln_n).exp();
        let mut v = Complex64::new(0.0, 0.0);
        for w in &self.weights {
            v += w * phase;
            phase *= step;
        }
        b * base * v
    }

    /// Certified bound on sum_{m > n} |b(m) m^{-w} V_w(m)| under
    /// |b(m)| <= d4(m) m^{0.1}, by shifting the V contour to Re u = A:
    /// |V_w(m)| <= (1/sqrt(2 pi)) e^{A^2} S m^{-A} / A with
    /// S = sup_v e^{-v^2/2} |L_inf(w + A + iv)|, and the d4 tail formula
    /// for the remaining sum over m.
    fn tail_bound(&self, gamma: &GammaFactorSpec, n: usize) -> f64 {
        let sigma = self.w_exponent.re;
        let a = (0.5 * (n as f64).ln()).max(CONTOUR_RE);
        let e = sigma + a - 0.1;
        if e <= 1.0 {
            return f64::INFINITY;
        }
        let y_max = gamma
            .shifts
            .iter()
            .map(|mu| (self.w_exponent.im + mu.im).abs())
            .fold(0.0f64, f64::max);
        let mut ln_sup = f64::NEG_INFINITY;
        let range = y_max + 6.0;
        let steps = (2.0 * range / 0.1).ceil() as usize;
        for k in 0..=steps {
            let v = -range + 2.0 * range * k as f64 / steps as f64;
            let mut lv = -0.5 * v * v + gamma.pi_power * (sigma + a) * PI.ln();
            for &mu in &gamma.shifts {
                let arg = Complex64::new(sigma + a + mu.re, self.w_exponent.im + mu.im + v) / 2.0;
                match lgamma_complex(arg) {
                    Ok(lg) => lv += lg.re,
                    Err(_) => return f64::INFINITY,
                }
            }
            ln_sup = ln_sup.max(lv);
        }
        let prefactor = (a * a + ln_sup).exp() / ((2.0 * PI).sqrt() * a);
        // 1.3 covers the sup sampling, 2 the trapezoid discretization of V
        2.6 * prefactor * d4_tail_bound(n as f64, e)
    }
}

fn supports_afe(l: &LSeries) -> Result<()> {
    match l.kind {
        LKind::Zeta | LKind::Gl2 => Ok(()),
        k => Err(Error::UnsupportedKind(format!(
            "{k:?} has no central-strip evaluation"
        ))),
    }
}

/// Lambda(s) by the smoothed AFE, plus the number of coefficients consumed.
/// eps_rel is relative to the scale of the cutoff weights.
fn afe_lambda(l: &LSeries, s: Complex64, eps_rel: f64) -> Result<(Complex64, usize)> {
    supports_afe(l)?;
    let gamma = l.gamma_factor();
    let c = analytic_conductor(gamma, s);
    if c > CONDUCTOR_GATE {
        return Err(Error::ConductorGate(c, CONDUCTOR_GATE));
    }
    if l.has_pole() && (s.norm() < 1e-6 || (s - 1.0).norm() < 1e-6) {
        return Err(Error::NearPole {
            location: "s in {0, 1}".into(),
            radius: 1e-6,
        });
    }
    let leg_s = Leg::new(gamma, s)?;
    let leg_m = Leg::new(gamma, 1.0 - s)?;
    let omega = l.root_number();
    // absolute tolerance pinned to the scale of the cutoff weights
    let scale: f64 = leg_s.weights.iter().map(|w| w.norm()).sum::<f64>()
        + leg_m.weights.iter().map(|w| w.norm()).sum::<f64>();
    let eps = eps_rel * scale.max(f64::MIN_POSITIVE);

    let mut lam = Complex64::new(0.0, 0.0);
    let have = l.coefficient_count();
    let mut n_used = 0;
    let mut certified = false;
    for n in 1..=have {
        let b = l.coefficient(n);
        lam += leg_s.term(b, n) + omega * leg_m.term(b, n);
        n_used = n;
        if ((n >= 16 && n.is_power_of_two()) || n == have)
            && leg_s.tail_bound(gamma, n) + leg_m.tail_bound(gamma, n) < 0.5 * eps
        {
            certified = true;
            break;
        }
    }
    if !certified {
        let mut need = have.max(16);
        while need < 1_000_000_000
            && leg_s.tail_bound(gamma, need) + leg_m.tail_bound(gamma, need) >= 0.5 * eps
        {
            need *= 2;
        }
        return Err(Error::InsufficientCoefficients { have, need });
    }
    if l.has_pole() {
        let one = Complex64::new(1.0, 0.0);
        lam -= g(one - s) / (one - s) + g(-s) / s;
    }
    Ok((lam, n_used))
}

/// Finite central value L(s) = Lambda(s) / L_inf(s) on Re s = 1/2 by the
/// smoothed approximate functional equation. Zeta and GL(2) kinds only.
pub fn afe_central(l: &LSeries, s: Complex64, eps: f64) -> Result<Complex64> {
    assert!(eps > 0.0);
    if (s.re - 0.5).abs() > 1e-9 {
        return Err(Error::OutOfRegime(format!(
            "afe_central requires Re s = 1/2, got {}",
            s.re
        )));
    }
    let (lam, _) = afe_lambda(l, s, eps)?;
    Ok(lam / l.gamma_factor().eval(s)?)
}

/// Number of Dirichlet coefficients consumed by the AFE at s, for conductor
/// scaling diagnostics.
pub fn afe_truncation_length(l: &LSeries, s: Complex64, eps: f64) -> Result<usize> {
    let (_, n) = afe_lambda(l, s, eps)?;
    Ok(n)
}

const COMPLETED_EPS: f64 = 1e-11;

/// Completed value Lambda(s) = L_inf(s) L(s): by the AFE where supported
/// (both legs of the AFE converge for Re s < 1.9), by the Dirichlet series
/// to the right with the best certified accuracy the coefficients allow,
/// and by reflection to the left. Falls back to the best accuracy the
/// available coefficients certify when the default target is out of reach.
pub fn completed_l(l: &LSeries, spec: &GammaFactorSpec, s: Complex64) -> Result<Complex64> {
    if s.re <= -0.1 {
        return Ok(l.root_number() * completed_l(l, spec, 1.0 - s)?);
    }
    if s.re < 1.9 && supports_afe(l).is_ok() {
        let lam = match afe_lambda(l, s, COMPLETED_EPS) {
            Ok((lam, _)) => lam,
            Err(Error::InsufficientCoefficients { .. }) => {
                let gamma = l.gamma_factor();
                let leg_s = Leg::new(gamma, s)?;
                let leg_m = Leg::new(gamma, 1.0 - s)?;
                let scale: f64 = leg_s.weights.iter().map(|w| w.norm()).sum::<f64>()
                    + leg_m.weights.iter().map(|w| w.norm()).sum::<f64>();
                let have = l.coefficient_count();
                let achievable = 1.01
                    * (leg_s.tail_bound(gamma, have) + leg_m.tail_bound(gamma, have))
                    / (0.5 * scale.max(f64::MIN_POSITIVE));
                afe_lambda(l, s, achievable)?.0
            }
            Err(e) => return Err(e),
        };
        return Ok(lam);
    }
    if s.re >= 1.1 {
        let achievable = 1.01 * l.tail_bound(l.coefficient_count(), s.re);
        let v = l.dirichlet_eval(s, achievable.max(COMPLETED_EPS))?;
        return Ok(v * spec.eval(s)?);
    }
    Err(Error::UnsupportedKind(format!(
        "{:?} has no central-strip evaluation",
        l.kind
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::synthetic_multiplicative_form;
    use crate::specfun::xi;

    #[test]
    fn zeta_central_value() {
        let z = LSeries::zeta(200_000);
        let v = afe_central(&z, Complex64::new(0.5, 0.0), 1e-8).unwrap();
        assert!(
            (v.re - (-1.460_354_508_8)).abs() < 1e-6 && v.im.abs() < 1e-8,
            "{v}"
        );
    }

    #[test]
    fn odd_sign_forces_zero() {
        let phi = synthetic_multiplicative_form(20_000); // tagged odd
        let l = LSeries::gl2(&phi).unwrap();
        let v = afe_central(&l, Complex64::new(0.5, 0.0), 1e-6).unwrap();
        assert!(v.norm() < 1e-6, "{v}");
    }

    #[test]
    fn completed_zeta_matches_xi() {
        let z = LSeries::zeta(600_000);
        let s = Complex64::new(0.7, 0.0);
        let v = completed_l(&z, &GammaFactorSpec::zeta(), s).unwrap();
        let exact = xi(s).unwrap();
        assert!((v - exact).norm() < 1e-10, "{v} vs {exact}");
    }

    #[test]
    fn completed_zeta_functional_equation() {
        // residual over 20 points with |Im s| <= 50; the AFE degrades to the
        // accuracy 60000 coefficients certify, far below the 1e-3 demand
        let z = LSeries::zeta(60_000);
        let spec = GammaFactorSpec::zeta();
        for k in 0..20 {
            let s = Complex64::new(0.3 + 0.02 * k as f64, -47.5 + 5.0 * k as f64);
            let a = completed_l(&z, &spec, s).unwrap();
            let b = completed_l(&z, &spec, 1.0 - s).unwrap();
            assert!(
                (a - b).norm() <= 1e-3 * a.norm().max(f64::MIN_POSITIVE),
                "s = {s}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn afe_agrees_with_dirichlet_series() {
        // the AFE route against the plain truncated Dirichlet sum where the
        // latter converges
        let z = LSeries::zeta(200_000);
        let spec = GammaFactorSpec::zeta();
        let s = Complex64::new(1.7, 3.0);
        let via_afe = completed_l(&z, &spec, s).unwrap();
        let via_dirichlet = z.dirichlet_eval(s, 1e-3).unwrap() * spec.eval(s).unwrap();
        assert!(
            (via_afe - via_dirichlet).norm() < 2e-3 * via_afe.norm().max(1.0),
            "{via_afe} vs {via_dirichlet}"
        );
    }

    #[test]
    fn unsupported_kinds_are_refused() {
        let phi = synthetic_multiplicative_form(500);
        let rs = LSeries::rankin_selberg(&phi, &phi).unwrap();
        assert!(matches!(
            afe_central(&rs, Complex64::new(0.5, 0.0), 1e-4),
            Err(Error::UnsupportedKind(_))
        ));
    }

    #[test]
    fn conductor_gate() {
        let z = LSeries::zeta(1000);
        assert!(matches!(
            afe_central(&z, Complex64::new(0.5, 3.0e6), 1e-4),
            Err(Error::ConductorGate(_, _))
        ));
    }

    #[test]
    fn insufficient_coefficients_report_demand() {
        let z = LSeries::zeta(100);
        match afe_central(&z, Complex64::new(0.5, 0.0), 1e-8) {
            Err(Error::InsufficientCoefficients { have, need }) => {
                assert_eq!(have, 100);
                assert!(need > 100);
            }
            other => panic!("expected insufficiency, got {other:?}"),
        }
    }

    #[test]
    fn truncation_length_grows_like_sqrt_conductor() {
        let z = LSeries::zeta(400_000);
        let lengths: Vec<f64> = [5.0, 20.0, 80.0]
            .iter()
            .map(|&t| afe_truncation_length(&z, Complex64::new(0.5, t), 1e-6).unwrap() as f64)
            .collect();
        // conductor scales by about 4 per step, so lengths roughly double;
        // the stopping rule quantizes to powers of two, hence wide brackets
        for w in lengths.windows(2) {
            let ratio = w[1] / w[0];
            assert!(
                (1.0..=4.5).contains(&ratio),
                "lengths {lengths:?} ratio {ratio}"
            );
        }
        assert!(lengths[2] > lengths[0], "lengths {lengths:?}");
    }
    fn fixture_forms() -> Vec<crate::forms::MaassForm> {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/maass");
        crate::ingest::load_fixtures(&dir).unwrap().0.forms().to_vec()
    }

    #[test]
    fn even_fixture_central_values_match_stored() {
        for form in fixture_forms()
            .iter()
            .filter(|f| f.central_value.is_some())
        {
            let l = LSeries::gl2(form).unwrap();
            let s = Complex64::new(0.5, 0.0);
            let spec = l.gamma_factor().clone();
            let v = completed_l(&l, &spec, s).unwrap() / spec.eval(s).unwrap();
            let stored = form.central_value.unwrap();
            assert!(
                (v.re - stored).abs() < 1e-3 * (1.0 + stored.abs()) && v.im.abs() < 1e-6,
                "t_j = {}: computed {v}, stored {stored}",
                form.t_j
            );
        }
    }

    #[test]
    fn fixture_functional_equation_off_center() {
        let forms = fixture_forms();
        let even = forms
            .iter()
            .find(|f| f.parity == crate::forms::Parity::Even)
            .unwrap();
        let l = LSeries::gl2(even).unwrap();
        let spec = l.gamma_factor().clone();
        let up = completed_l(&l, &spec, Complex64::new(0.5, 5.0)).unwrap();
        let down = completed_l(&l, &spec, Complex64::new(0.5, -5.0)).unwrap();
        let omega = l.root_number();
        assert!(
            (up - omega * down).norm() < 1e-4 * up.norm(),
            "up {up}, down {down}"
        );
    }

    #[test]
    fn fixture_functional_equation_residuals() {
        for form in fixture_forms().iter().take(3) {
            let l = LSeries::gl2(form).unwrap();
            let spec = l.gamma_factor().clone();
            let omega = l.root_number();
            for k in 0..5 {
                let s = Complex64::new(0.5, 1.0 + 1.5 * k as f64);
                let up = completed_l(&l, &spec, s).unwrap();
                let down = completed_l(&l, &spec, Complex64::new(1.0, 0.0) - s).unwrap();
                let scale = up.norm().max(down.norm()).max(1e-12);
                assert!(
                    (up - omega * down).norm() <= 1e-3 * scale,
                    "t_j = {}, s = {s}",
                    form.t_j
                );
            }
        }
    }
}
