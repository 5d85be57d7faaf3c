//! Complex Gamma and digamma via the Stirling asymptotic series with
//! recurrence shifts, and reflection for the left half-plane.

use crate::{Error, Result};
use num_complex::Complex64;

use super::POLE_RADIUS;

/// Bernoulli numbers B_2 .. B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

const HALF_LN_TWO_PI: f64 = 0.9189385332046727;

fn check_pole(s: Complex64) -> Result<()> {
    if s.re < 0.5 && s.im.abs() < POLE_RADIUS {
        let k = s.re.round();
        if k <= 0.0 && (s.re - k).abs() < POLE_RADIUS {
            return Err(Error::GammaPole(k as i64));
        }
    }
    Ok(())
}

/// Stirling series for log Gamma, valid for |z| >= 12 with Re z >= 0.5.
fn lgamma_stirling(z: Complex64) -> Complex64 {
    let mut sum = (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI;
    let z2 = z * z;
    let mut zp = z;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let n = (2 * (k + 1)) as f64;
        sum += b / (n * (n - 1.0) * zp);
        zp *= z2;
    }
    sum
}

/// Principal-branch log Gamma for Re z >= 0.5, continuous on vertical lines.
fn lgamma_right(z: Complex64) -> Complex64 {
    if z.norm() >= 12.0 {
        return lgamma_stirling(z);
    }
    // Shift upward until the Stirling region is reached.
    let m = (12.0 - z.re).ceil().max(0.0) as usize + 3;
    let mut shift = Complex64::new(0.0, 0.0);
    for j in 0..m {
        shift += (z + j as f64).ln();
    }
    lgamma_stirling(z + m as f64) - shift
}

/// log sin(pi z), stable for large |Im z|; branch chosen continuously in the
/// half-plane of Im z.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let pi = std::f64::consts::PI;
    if z.im >= 0.0 {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (2i) * (-1)... careful:
        // sin w = (e^{iw} - e^{-iw})/(2i) = e^{-iw}(e^{2iw} - 1)/(2i)
        let w = pi * z;
        -i * w + ((2.0 * i * w).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        let w = pi * z;
        i * w + (1.0 - (-2.0 * i * w).exp()).ln() - (2.0 * i).ln()
    }
}

/// Log of the Gamma function.
///
/// Accurate to roughly 1e-13 relative (in Gamma) for |s| <= 1e3. The branch
/// is the principal one for Re s >= 1/2; for Re s < 1/2 the reflection
/// formula fixes the branch only up to multiples of 2 pi i, which does not
/// affect exp(lgamma).
pub fn lgamma_complex(s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    if s.re >= 0.5 {
        Ok(lgamma_right(s))
    } else {
        let pi = std::f64::consts::PI;
        Ok(Complex64::new(pi.ln(), 0.0) - ln_sin_pi(s) - lgamma_right(1.0 - s))
    }
}

/// The Gamma function on the complex plane.
pub fn gamma_complex(s: Complex64) -> Result<Complex64> {
    Ok(lgamma_complex(s)?.exp())
}

/// Digamma psi(s) = Gamma'(s)/Gamma(s).
pub fn digamma_complex(s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    if s.re < 0.5 {
        // psi(1-s) - psi(s) = pi cot(pi s)
        let pi = std::f64::consts::PI;
        let cot = (pi * s).cos() / (pi * s).sin();
        return Ok(digamma_complex(1.0 - s)? - pi * cot);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut z = s;
    while z.norm() < 12.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // psi(z) ~ ln z - 1/2z - sum B_2k / (2k z^2k)
    let mut sum = z.ln() - 0.5 / z;
    let z2 = z * z;
    let mut zp = z2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let n = (2 * (k + 1)) as f64;
        sum -= b / (n * zp);
        zp *= z2;
    }
    Ok(sum + shift)
}

/// The modulus predicted for |Gamma(sigma + it)| by the leading Stirling
/// form: e^{-pi |t| / 2} (1 + |t|)^{sigma - 1/2} sqrt(2 pi).
pub fn stirling_gamma_modulus(sigma: f64, t: f64) -> f64 {
    let pi = std::f64::consts::PI;
    (-pi * t.abs() / 2.0).exp() * (1.0 + t.abs()).powf(sigma - 0.5) * (2.0 * pi).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let v = gamma_complex(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn gamma_one_is_one() {
        let v = gamma_complex(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-13);
    }

    #[test]
    fn gamma_integers() {
        for n in 1..12u64 {
            let fact: u64 = (1..n).product();
            let v = gamma_complex(c(n as f64, 0.0)).unwrap();
            assert_relative_eq!(v.re, fact as f64, max_relative = 1e-12);
        }
    }

    #[test]
    fn pole_refusal() {
        assert!(matches!(
            gamma_complex(c(0.0, 0.0)),
            Err(crate::Error::GammaPole(0))
        ));
        assert!(matches!(
            gamma_complex(c(-3.0 + 1e-10, 1e-10)),
            Err(crate::Error::GammaPole(-3))
        ));
        assert!(gamma_complex(c(-3.5, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_on_grid() {
        // |Gamma(s+1) - s Gamma(s)| <= 1e-12 |Gamma(s+1)| over a random grid.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let re = (next() - 0.5) * 200.0;
            let im = (next() - 0.5) * 200.0;
            let s = c(re, im);
            if s.im.abs() < 1e-3 && s.re < 0.5 {
                continue;
            }
            let g1 = gamma_complex(s + 1.0).unwrap();
            let g0 = gamma_complex(s).unwrap();
            if !g1.re.is_finite() || !g0.re.is_finite() || g1.norm() < 1e-290 {
                continue;
            }
            assert!(
                (g1 - s * g0).norm() <= 1e-12 * g1.norm(),
                "recurrence failed at {s}: residual {}",
                (g1 - s * g0).norm() / g1.norm()
            );
        }
    }

    #[test]
    fn reflection_small_values() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let v = gamma_complex(c(-0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, -2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn stirling_envelope() {
        // |Gamma(sigma+it)| / stirling form in [1 - 5/t, 1 + 5/t].
        for &sigma in &[0.0, 0.5, 1.0] {
            for &t in &[50.0, 100.0, 200.0] {
                let g = gamma_complex(c(sigma, t)).unwrap().norm();
                let env = stirling_gamma_modulus(sigma, t);
                let ratio = g / env;
                assert!(
                    ratio >= 1.0 - 5.0 / t && ratio <= 1.0 + 5.0 / t,
                    "sigma={sigma} t={t} ratio={ratio}"
                );
            }
        }
    }

    #[test]
    fn large_imaginary_argument() {
        // Known: |Gamma(1/2 + it)|^2 = pi / cosh(pi t).
        for &t in &[5.0, 30.0, 120.0, 200.0] {
            let g = gamma_complex(c(0.5, t)).unwrap().norm();
            let exact = (std::f64::consts::PI / (std::f64::consts::PI * t).cosh()).sqrt();
            assert_relative_eq!(g, exact, max_relative = 1e-12);
        }
        // |Gamma(1 + it)|^2 = pi t / sinh(pi t)
        for &t in &[5.0, 50.0, 150.0] {
            let g = gamma_complex(c(1.0, t)).unwrap().norm();
            let exact = (std::f64::consts::PI * t / (std::f64::consts::PI * t).sinh()).sqrt();
            assert_relative_eq!(g, exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn digamma_values() {
        // psi(1) = -gamma
        let v = digamma_complex(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, -0.5772156649015329, max_relative = 1e-12);
        // psi(1/2) = -gamma - 2 ln 2
        let v = digamma_complex(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, -1.9635100260214235, max_relative = 1e-12);
        // recurrence psi(s+1) = psi(s) + 1/s
        let s = c(0.3, 2.7);
        let a = digamma_complex(s + 1.0).unwrap();
        let b = digamma_complex(s).unwrap() + 1.0 / s;
        assert!((a - b).norm() < 1e-12);
    }
}
