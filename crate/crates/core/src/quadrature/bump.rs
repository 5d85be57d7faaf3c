//! Smooth compactly supported radial test functions on the modular surface:
//! psi(z) = exp(-1 / (1 - (d(z, z0)/r)^2)) inside the hyperbolic ball of
//! radius r around z0, zero outside. Laplacian powers are computed through
//! Laurent jets of the radial profile in u = cosh d, using
//! Delta f = -[(u^2 - 1) f'' + 2 u f'].

use crate::forms::UpperHalfPoint;
use crate::specfun::LaurentJet;
use crate::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct TestFunction {
    pub center: UpperHalfPoint,
    pub radius: f64,
}

/// acosh(1 + g)^2 as a power series in g, for jets near the center where the
/// square root in acosh degrades.
const ACOSH_SQ: [f64; 5] = [
    2.0,
    -1.0 / 3.0,
    4.0 / 45.0,
    -1.0 / 35.0,
    16.0 / 1575.0,
];

fn acosh_sq(u: f64) -> f64 {
    let g = u - 1.0;
    if g < 1e-4 {
        let mut acc = 0.0;
        for &c in ACOSH_SQ.iter().rev() {
            acc = acc * g + c;
        }
        acc * g
    } else {
        let d = u.acosh();
        d * d
    }
}

impl TestFunction {
    /// The support is the Euclidean disc with center (x0, y0 cosh r) and
    /// radius y0 sinh r; it must sit strictly inside the standard fundamental
    /// domain.
    pub fn new(center: UpperHalfPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Invalid("bump radius must be positive".into()));
        }
        let cy = center.y * radius.cosh();
        let rr = center.y * radius.sinh();
        let margin = 1e-9;
        if center.x.abs() + rr >= 0.5 - margin {
            return Err(Error::Invalid(format!(
                "bump support [|x - {}| <= {rr}] leaves |x| <= 1/2",
                center.x
            )));
        }
        if (center.x * center.x + cy * cy).sqrt() - rr <= 1.0 + margin {
            return Err(Error::Invalid(
                "bump support crosses the unit-circle boundary of the fundamental domain".into(),
            ));
        }
        Ok(TestFunction { center, radius })
    }

    pub fn sup_norm(&self) -> f64 {
        (-1.0f64).exp()
    }

    /// cosh of the hyperbolic distance to the center, for an already-reduced
    /// point.
    fn u_of(&self, x: f64, y: f64) -> f64 {
        let dx = x - self.center.x;
        let dy = y - self.center.y;
        1.0 + (dx * dx + dy * dy) / (2.0 * y * self.center.y)
    }

    fn eval_local(&self, x: f64, y: f64) -> f64 {
        let w2 = acosh_sq(self.u_of(x, y)) / (self.radius * self.radius);
        if w2 >= 1.0 - 1e-14 {
            0.0
        } else {
            (-1.0 / (1.0 - w2)).exp()
        }
    }

    pub fn eval(&self, z: UpperHalfPoint) -> f64 {
        let r = z.reduced();
        self.eval_local(r.x, r.y)
    }

    /// The jet of psi in eps with u = u0 + eps, with `order` known
    /// coefficients; None outside the support.
    fn psi_jet(&self, u0: f64, order: i32) -> Result<Option<LaurentJet>> {
        let r2 = self.radius * self.radius;
        let g0 = u0 - 1.0;
        let pad = |mut v: Vec<Complex64>| {
            v.resize(order as usize, Complex64::new(0.0, 0.0));
            LaurentJet::new(0, v)
        };
        let v_jet = if g0 < 1e-3 {
            // Polynomial series of acosh^2(1 + g) in g = g0 + eps.
            let g = pad(vec![
                Complex64::new(g0, 0.0),
                Complex64::new(1.0, 0.0),
            ]);
            let mut acc = LaurentJet::new(0, vec![Complex64::new(0.0, 0.0); order as usize]);
            let mut gp = pad(vec![Complex64::new(1.0, 0.0)]);
            for &c in ACOSH_SQ.iter() {
                gp = gp.mul(&g);
                acc = acc.add(&gp.scale(Complex64::new(c, 0.0)));
            }
            pad_to(acc, order)
        } else {
            // d' = (u^2 - 1)^{-1/2}; v = d^2 integrated from d(u0).
            let u2m1 = pad(vec![
                Complex64::new(u0 * u0 - 1.0, 0.0),
                Complex64::new(2.0 * u0, 0.0),
                Complex64::new(1.0, 0.0),
            ]);
            let d_jet = u2m1
                .powf(-0.5)?
                .antiderivative(Complex64::new(u0.acosh(), 0.0))?;
            pad_to(d_jet.mul(&d_jet), order)
        };
        let q = LaurentJet::new(0, {
            let mut v = vec![Complex64::new(0.0, 0.0); order as usize];
            v[0] = Complex64::new(1.0, 0.0);
            v
        })
        .sub(&v_jet.scale(Complex64::new(1.0 / r2, 0.0)));
        let q0 = q.coeff(0).re;
        if q0 <= 1e-10 {
            return Ok(None);
        }
        let psi = q.powf(-1.0)?.neg().exp()?;
        Ok(Some(pad_to(psi, order)))
    }

    /// Delta^l psi at z, with the positive Laplacian Delta = -y^2 (dxx + dyy).
    pub fn laplacian(&self, z: UpperHalfPoint, l: u32) -> Result<f64> {
        let r = z.reduced();
        let u0 = self.u_of(r.x, r.y);
        if acosh_sq(u0) >= self.radius * self.radius * (1.0 - 1e-14) {
            return Ok(0.0);
        }
        let order = 2 * l as i32 + 1;
        let mut jet = match self.psi_jet(u0, order)? {
            Some(j) => j,
            None => return Ok(0.0),
        };
        for _ in 0..l {
            jet = apply_radial_laplacian(u0, &jet);
        }
        Ok(jet.coeff(0).re)
    }

    pub fn eval_row(&self, y: f64, xs: &[f64]) -> Vec<Complex64> {
        xs.iter()
            .map(|&x| Complex64::new(self.eval(UpperHalfPoint::new(x, y)), 0.0))
            .collect()
    }

    pub fn laplacian_row(&self, y: f64, xs: &[f64], l: u32) -> Result<Vec<Complex64>> {
        xs.iter()
            .map(|&x| {
                self.laplacian(UpperHalfPoint::new(x, y), l)
                    .map(|v| Complex64::new(v, 0.0))
            })
            .collect()
    }
}

fn pad_to(jet: LaurentJet, order: i32) -> LaurentJet {
    let mut v = vec![Complex64::new(0.0, 0.0); order as usize];
    let hi = jet.truncation_order().min(order);
    for (k, item) in v.iter_mut().enumerate().take(hi.max(0) as usize) {
        let kk = k as i32;
        if kk >= jet.lowest_order() && kk < jet.truncation_order() {
            *item = jet.coeff(kk);
        }
    }
    LaurentJet::new(0, v)
}

/// -[(u^2 - 1) f'' + 2 u f'] as a jet around u0; drops two known orders.
pub(crate) fn apply_radial_laplacian(u0: f64, f: &LaurentJet) -> LaurentJet {
    let t = f.truncation_order();
    let mut u2m1 = vec![Complex64::new(0.0, 0.0); t.max(3) as usize];
    u2m1[0] = Complex64::new(u0 * u0 - 1.0, 0.0);
    u2m1[1] = Complex64::new(2.0 * u0, 0.0);
    u2m1[2] = Complex64::new(1.0, 0.0);
    let u2m1 = LaurentJet::new(0, u2m1);
    let mut u2 = vec![Complex64::new(0.0, 0.0); t.max(2) as usize];
    u2[0] = Complex64::new(2.0 * u0, 0.0);
    u2[1] = Complex64::new(2.0, 0.0);
    let two_u = LaurentJet::new(0, u2);
    let f1 = f.derivative();
    let f2 = f1.derivative();
    u2m1.mul(&f2).add(&two_u.mul(&f1)).neg()
}
