//! Eisenstein series from the Fourier expansion
//! E(z, s) = y^s + (xi(2s-1)/xi(2s)) y^{1-s}
//!           + (2 sqrt y / xi(2s)) sum_{n != 0} |n|^{s-1/2} sigma_{1-2s}(|n|)
//!             K_{s-1/2}(2 pi |n| y) e(nx),
//! which on the critical line s = 1/2 + it reads eta_t(|n|) / xi(1+2it) in
//! place of the sigma coefficients.

use crate::specfun::{bessel_k_complex_order, bessel_k_imag, bessel_k_real_order, xi};
use crate::{Error, Result};
use num_complex::Complex64;

use super::{truncation_bound, UpperHalfPoint};

/// Parameter of an Eisenstein series: a general point s or the critical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EisensteinParams {
    General(Complex64),
    CriticalLine(f64),
}

impl EisensteinParams {
    pub fn general(s: Complex64) -> Result<Self> {
        for pole in [0.0, 1.0] {
            if (s - pole).norm() < 1e-6 {
                return Err(Error::NearPole {
                    location: format!("s = {pole}"),
                    radius: 1e-6,
                });
            }
        }
        Ok(EisensteinParams::General(s))
    }

    pub fn critical_line(t: f64) -> Result<Self> {
        if t.abs() < 1e-6 {
            return Err(Error::NearPole {
                location: "t = 0 (xi(1 + 2it) pole)".into(),
                radius: 1e-6,
            });
        }
        Ok(EisensteinParams::CriticalLine(t))
    }

    pub fn s(&self) -> Complex64 {
        match *self {
            EisensteinParams::General(s) => s,
            EisensteinParams::CriticalLine(t) => Complex64::new(0.5, t),
        }
    }
}

/// The divisor-sum coefficient eta_t(n) = sum_{ab = n} (a/b)^{it}; real, and
/// bounded by the divisor count d(n).
pub fn eisenstein_coeff(t: f64, n: u64) -> Complex64 {
    assert!(n >= 1);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut a = 1u64;
    while a * a <= n {
        if n % a == 0 {
            let b = n / a;
            let l = (a as f64 / b as f64).ln();
            sum += Complex64::from_polar(1.0, t * l);
            if b != a {
                sum += Complex64::from_polar(1.0, -t * l);
            }
        }
        a += 1;
    }
    sum
}

/// sigma_w(n) = sum_{d | n} d^w for complex w.
fn sigma_complex(w: Complex64, n: u64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut a = 1u64;
    while a * a <= n {
        if n % a == 0 {
            let b = n / a;
            sum += (w * (a as f64).ln()).exp();
            if b != a {
                sum += (w * (b as f64).ln()).exp();
            }
        }
        a += 1;
    }
    sum
}

/// A prepared Eisenstein series: the xi-dependent prefactors are computed once
/// so grid evaluation only pays for Bessel functions and divisor sums.
#[derive(Debug, Clone)]
pub struct EisensteinSeries {
    params: EisensteinParams,
    s: Complex64,
    /// xi(2s-1)/xi(2s), the scattering coefficient of the constant term.
    phi: Complex64,
    /// 1/xi(2s).
    inv_xi: Complex64,
}

impl EisensteinSeries {
    pub fn new(params: EisensteinParams) -> Result<Self> {
        let s = params.s();
        let xi_2s = xi(2.0 * s)?;
        let xi_2s_m1 = xi(2.0 * s - 1.0)?;
        Ok(EisensteinSeries {
            params,
            s,
            phi: xi_2s_m1 / xi_2s,
            inv_xi: 1.0 / xi_2s,
        })
    }

    pub fn params(&self) -> EisensteinParams {
        self.params
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    /// The scattering coefficient phi(s) = xi(2s-1)/xi(2s).
    pub fn phi(&self) -> Complex64 {
        self.phi
    }

    /// The n-th Fourier coefficient (without the 2 sqrt y K-Bessel factor).
    pub fn fourier_coeff(&self, n: u64) -> Complex64 {
        match self.params {
            EisensteinParams::CriticalLine(t) => eisenstein_coeff(t, n) * self.inv_xi,
            EisensteinParams::General(s) => {
                let nf = n as f64;
                ((s - 0.5) * nf.ln()).exp()
                    * sigma_complex(Complex64::new(1.0, 0.0) - 2.0 * s, n)
                    * self.inv_xi
            }
        }
    }

    fn bessel(&self, x: f64) -> Result<Complex64> {
        let nu = self.s - 0.5;
        if nu.re.abs() < 1e-12 {
            Ok(Complex64::new(bessel_k_imag(nu.im.abs(), x)?, 0.0))
        } else if nu.im.abs() < 1e-12 {
            Ok(Complex64::new(bessel_k_real_order(nu.re, x)?, 0.0))
        } else {
            bessel_k_complex_order(nu, x)
        }
    }

    /// Evaluate along one horizontal row y = const at the given x values.
    /// The Fourier expansion converges on all of the upper half-plane, so no
    /// reduction is applied; callers wanting minimal truncation length reduce
    /// first.
    pub fn eval_row(&self, y: f64, xs: &[f64], eps: f64) -> Result<Vec<Complex64>> {
        assert!(y > 0.0 && eps > 0.0);
        let n_max = truncation_bound(self.s.im.abs(), y, eps * 0.05) + 2;
        let ln_y = y.ln();
        let constant = (self.s * ln_y).exp() + self.phi * ((1.0 - self.s) * ln_y).exp();
        let two_pi = 2.0 * std::f64::consts::PI;
        let scale = 2.0 * y.sqrt();
        let mut terms = Vec::with_capacity(n_max);
        for n in 1..=n_max as u64 {
            let k = self.bessel(two_pi * n as f64 * y)?;
            terms.push(self.fourier_coeff(n) * k * scale);
        }
        Ok(xs
            .iter()
            .map(|&x| {
                let mut acc = constant;
                for (i, c) in terms.iter().enumerate() {
                    let n = (i + 1) as f64;
                    acc += c * 2.0 * (two_pi * n * x).cos();
                }
                acc
            })
            .collect())
    }

    /// Evaluate at a single point, after reduction to the fundamental domain.
    pub fn eval(&self, z: UpperHalfPoint, eps: f64) -> Result<Complex64> {
        let r = z.reduced();
        Ok(self.eval_row(r.y, &[r.x], eps)?[0])
    }
}

/// E(z, s) by Fourier expansion.
pub fn eisenstein_eval(params: EisensteinParams, z: UpperHalfPoint, eps: f64) -> Result<Complex64> {
    EisensteinSeries::new(params)?.eval(z, eps)
}

/// The real-normalized critical-line series E_t*(z) = c_t E(z, 1/2+it) with
/// c_t = xi(1+2it)/|xi(1+2it)|.
pub fn eisenstein_star(t: f64, z: UpperHalfPoint, eps: f64) -> Result<f64> {
    let series = EisensteinSeries::new(EisensteinParams::critical_line(t)?)?;
    let xi_val = xi(Complex64::new(1.0, 2.0 * t))?;
    let c = xi_val / xi_val.norm();
    let v = c * series.eval(z, eps)?;
    debug_assert!(v.im.abs() <= 100.0 * eps + 1e-9, "E_t* imaginary part {}", v.im);
    Ok(v.re)
}
