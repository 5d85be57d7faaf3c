//! Dirichlet series data for the L-functions in play, with certified
//! truncation tails in the absolute-convergence range Re s >= 1.1.

use crate::forms::{MaassForm, Parity};
use crate::{Complex64, Error, Result};

use super::gamma::GammaFactorSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LKind {
    Zeta,
    Gl2,
    EisensteinXGl2,
    Sym2,
    RankinSelberg,
}

/// A Dirichlet series sum b(n) n^{-s} together with its archimedean factor,
/// root number, and pole data. Coefficients are 1-based and include the
/// zeta(2s) convolution for the sym^2 and Rankin-Selberg kinds.
#[derive(Debug, Clone)]
pub struct LSeries {
    pub kind: LKind,
    coeffs: Vec<Complex64>,
    gamma: GammaFactorSpec,
    root_number: f64,
    has_pole: bool,
    /// C with sum_{n <= X} |b(n)|^2 <= C X^{1.1}, for mean-square tail
    /// bounds (zeta and gl2 kinds only; 0 disables).
    mean_square_constant: f64,
}

/// d_4(n) for n = 1..n_max by repeated divisor convolution.
fn d4_sieve(n_max: usize) -> Vec<f64> {
    let mut a = vec![1.0f64; n_max + 1];
    a[0] = 0.0;
    for _ in 0..3 {
        let mut out = vec![0.0f64; n_max + 1];
        for d in 1..=n_max {
            for q in 1..=n_max / d {
                out[d * q] += a[q];
            }
        }
        a = out;
    }
    a
}

fn check_sanity_bound(coeffs: &[Complex64]) -> Result<()> {
    let d4 = d4_sieve(coeffs.len());
    for (i, b) in coeffs.iter().enumerate() {
        let n = i + 1;
        let limit = d4[n] * (n as f64).powf(0.1) * (1.0 + 1e-9);
        if b.norm() > limit {
            return Err(Error::Invalid(format!(
                "coefficient b({n}) = {} exceeds the d4(n) n^0.1 bound {limit}",
                b.norm()
            )));
        }
    }
    Ok(())
}

/// Bound on sum_{n > N} d4(n) n^{-e} for e > 1, by partial summation against
/// sum_{n <= X} d4(n) <= X (ln X + 3)^3 / 6.
pub(crate) fn d4_tail_bound(n: f64, e: f64) -> f64 {
    assert!(e > 1.0 && n >= 1.0);
    let c = n.ln() + 3.0;
    let r = e - 1.0;
    let integral = n.powf(1.0 - e)
        * (c.powi(3) / r + 3.0 * c.powi(2) / r.powi(2) + 6.0 * c / r.powi(3) + 6.0 / r.powi(4));
    e * integral / 6.0
}

fn mean_square_constant(coeffs: &[Complex64]) -> f64 {
    let mut partial = 0.0;
    let mut c: f64 = 0.0;
    for (i, b) in coeffs.iter().enumerate() {
        partial += b.norm_sqr();
        c = c.max(partial / ((i + 1) as f64).powf(1.1));
    }
    1.2 * c
}

impl LSeries {
    /// Riemann zeta: b(n) = 1, with the pole at s = 1.
    pub fn zeta(n_max: usize) -> Self {
        assert!(n_max >= 1);
        Self {
            kind: LKind::Zeta,
            coeffs: vec![Complex64::new(1.0, 0.0); n_max],
            gamma: GammaFactorSpec::zeta(),
            root_number: 1.0,
            has_pole: true,
            mean_square_constant: 1.2,
        }
    }

    /// L(s, phi): b(n) = lambda(n), root number (-1)^eps.
    pub fn gl2(form: &MaassForm) -> Result<Self> {
        let coeffs: Vec<Complex64> = form
            .hecke
            .iter()
            .map(|&l| Complex64::new(l, 0.0))
            .collect();
        check_sanity_bound(&coeffs)?;
        let msc = mean_square_constant(&coeffs);
        Ok(Self {
            kind: LKind::Gl2,
            coeffs,
            gamma: GammaFactorSpec::from_form(form),
            root_number: match form.parity {
                Parity::Even => 1.0,
                Parity::Odd => -1.0,
            },
            has_pole: false,
            mean_square_constant: msc,
        })
    }

    /// L(s, E_t x phi) = L(s + it, phi) L(s - it, phi):
    /// b(n) = sum_{ab=n} lambda(a) lambda(b) (b/a)^{it}.
    pub fn eisenstein_x_gl2(form: &MaassForm, t: f64) -> Result<Self> {
        let n_max = form.coefficient_count();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max];
        for a in 1..=n_max {
            for b in 1..=n_max / a {
                let phase = Complex64::new(0.0, t * ((b as f64) / (a as f64)).ln()).exp();
                coeffs[a * b - 1] += form.lambda(a) * form.lambda(b) * phase;
            }
        }
        check_sanity_bound(&coeffs)?;
        Ok(Self {
            kind: LKind::EisensteinXGl2,
            coeffs,
            gamma: GammaFactorSpec::eisenstein_x_gl2(t, form.t_j, form.parity),
            root_number: 1.0,
            has_pole: false,
            mean_square_constant: 0.0,
        })
    }

    /// L(s, sym^2 phi) = zeta(2s) sum lambda(n^2) n^{-s}:
    /// b(n) = sum_{d^2 m = n} lambda(m^2).
    pub fn sym2(form: &MaassForm) -> Result<Self> {
        let n_max = form.coefficient_count();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max];
        for d in 1.. {
            let d2 = d * d;
            if d2 > n_max {
                break;
            }
            for m in 1..=n_max / d2 {
                if m * m > n_max {
                    break;
                }
                coeffs[d2 * m - 1] += form.lambda(m * m);
            }
        }
        check_sanity_bound(&coeffs)?;
        Ok(Self {
            kind: LKind::Sym2,
            coeffs,
            gamma: GammaFactorSpec::sym2(form.t_j),
            root_number: 1.0,
            has_pole: false,
            mean_square_constant: 0.0,
        })
    }

    /// L(s, f x g) = zeta(2s) sum lambda_f(n) lambda_g(n) n^{-s}:
    /// b(n) = sum_{d^2 m = n} lambda_f(m) lambda_g(m).
    pub fn rankin_selberg(f: &MaassForm, g: &MaassForm) -> Result<Self> {
        let n_max = f.coefficient_count().min(g.coefficient_count());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max];
        for d in 1.. {
            let d2 = d * d;
            if d2 > n_max {
                break;
            }
            for m in 1..=n_max / d2 {
                coeffs[d2 * m - 1] += f.lambda(m) * g.lambda(m);
            }
        }
        check_sanity_bound(&coeffs)?;
        Ok(Self {
            kind: LKind::RankinSelberg,
            coeffs,
            gamma: GammaFactorSpec::rankin_selberg(f.t_j, g.t_j),
            root_number: 1.0,
            has_pole: f.source_id == g.source_id,
            mean_square_constant: 0.0,
        })
    }

    pub fn gamma_factor(&self) -> &GammaFactorSpec {
        &self.gamma
    }

    pub fn root_number(&self) -> f64 {
        self.root_number
    }

    pub fn has_pole(&self) -> bool {
        self.has_pole
    }

    pub fn coefficient_count(&self) -> usize {
        self.coeffs.len()
    }

    /// b(n); 1-based.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coeffs[n - 1]
    }

    /// Certified bound on sum_{n > n_used} |b(n)| n^{-sigma}, from the
    /// mean-square profile when available and from |b(n)| <= d4(n) n^{0.1}
    /// otherwise. Requires sigma > 1.1.
    pub fn tail_bound(&self, n_used: usize, sigma: f64) -> f64 {
        assert!(sigma > 1.1 && n_used >= 1);
        let n = n_used as f64;
        if self.mean_square_constant > 0.0 {
            // Cauchy-Schwarz against sum_{n>N} |b|^2 n^{-sigma}
            //   <= sigma C N^{1.1-sigma} / (sigma - 1.1).
            let sq = sigma * self.mean_square_constant * n.powf(1.1 - sigma) / (sigma - 1.1);
            (sq * n.powf(1.0 - sigma) / (sigma - 1.0)).sqrt()
        } else {
            // |b(n)| <= d4(n) n^{0.1}
            d4_tail_bound(n, sigma - 0.1)
        }
    }

    /// Direct Dirichlet evaluation sum b(n) n^{-s} for Re s >= 1.1, with the
    /// truncation tail certified below eps.
    pub fn dirichlet_eval(&self, s: Complex64, eps: f64) -> Result<Complex64> {
        assert!(eps > 0.0);
        if s.re < 1.1 {
            return Err(Error::OutOfRegime(format!(
                "Dirichlet evaluation requires Re s >= 1.1, got {}",
                s.re
            )));
        }
        let have = self.coeffs.len();
        if self.tail_bound(have, s.re) > eps {
            let mut need = have;
            while need < 1_000_000_000 && self.tail_bound(need, s.re) > eps {
                need *= 2;
            }
            return Err(Error::InsufficientCoefficients { have, need });
        }
        let mut v = Complex64::new(0.0, 0.0);
        for n in (1..=have).rev() {
            v += self.coeffs[n - 1] * (-s * (n as f64).ln()).exp();
        }
        Ok(v)
    }
}
