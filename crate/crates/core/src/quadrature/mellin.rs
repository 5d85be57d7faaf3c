//! Unfolded Mellin integrals int int f(x + iy) y^{s-2} dx dy over the strip
//! 0 <= x <= 1, used after unfolding a Poincare or Eisenstein series.

use super::domain::constant_term_counted;
use super::RowIntegrand;
use crate::{Error, Result};
use num_complex::Complex64;

/// int_{y_min}^{y_max} int_0^1 f(x + iy) y^{s-2} dx dy, for integrands that
/// are negligible outside [y_min, y_max]. Gauss panels in ln y with doubling;
/// the x integral is the constant term of f.
pub fn unfold_mellin<F: RowIntegrand + ?Sized>(
    f: &F,
    s: Complex64,
    y_min: f64,
    y_max: f64,
    eps: f64,
) -> Result<Complex64> {
    assert!(y_min > 0.0 && y_max > y_min && eps > 0.0);
    let u0 = y_min.ln();
    let u1 = y_max.ln();
    let l = u1 - u0;
    let mut panels = ((2.0 + s.im.abs() / 4.0) * l).ceil().max(4.0) as usize;
    let mut prev: Option<Complex64> = None;
    loop {
        let mut acc = Complex64::new(0.0, 0.0);
        let h = l / panels as f64;
        for p in 0..panels {
            let mid = u0 + (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            for i in 0..6 {
                for sign in [-1.0f64, 1.0] {
                    let u = mid + sign * half * super::domain::GL12_X[i];
                    let w = half * super::domain::GL12_W[i];
                    let y = u.exp();
                    let (a0, _) = constant_term_counted(f, y, eps * 1e-3 / l.max(1.0))?;
                    // y^{s-2} dx dy = e^{u(s-1)} a0(y) du
                    acc += a0 * ((s - 1.0) * u).exp() * w;
                }
            }
        }
        if let Some(p) = prev {
            if (acc - p).norm() <= eps * acc.norm().max(1.0) {
                return Ok(acc);
            }
        }
        if panels >= 2048 {
            return Err(Error::Invalid(
                "unfolded Mellin integral did not converge".into(),
            ));
        }
        prev = Some(acc);
        panels *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_profile_oracle() {
        // a0(y) = exp(-(ln y)^2) gives int a0 y^{s-2} dy
        //       = sqrt(pi) exp((s-1)^2 / 4).
        let f = |y: f64, xs: &[f64]| {
            let v = (-(y.ln() * y.ln())).exp();
            Ok(xs.iter().map(|_| Complex64::new(v, 0.0)).collect())
        };
        for &s in &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.7, 0.5),
            Complex64::new(1.4, -1.1),
        ] {
            let v = unfold_mellin(&f, s, (-6.0f64).exp(), (6.0f64).exp(), 1e-10).unwrap();
            let exact = std::f64::consts::PI.sqrt() * ((s - 1.0) * (s - 1.0) / 4.0).exp();
            assert!(
                (v - exact).norm() < 1e-8 * exact.norm(),
                "s = {s}: {v} vs {exact}"
            );
        }
    }
}
