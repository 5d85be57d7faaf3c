//! Validation of ingested Hecke eigenvalue data: multiplicativity residuals
//! and the Rankin-Selberg partial-sum sanity profile.

use super::MaassForm;

/// Outcome of validating a form's Hecke eigenvalues. Failures are report
/// entries, not errors.
#[derive(Debug, Clone)]
pub struct HeckeReport {
    /// Largest |lambda(m)lambda(n) - sum_{d | (m,n)} lambda(mn/d^2)| over
    /// pairs with mn <= coefficient count.
    pub max_residual: f64,
    pub worst_pair: (usize, usize),
    /// Pairs whose residual exceeds the 1e-6 admission threshold.
    pub flagged: Vec<(usize, usize, f64)>,
    /// (X, sum_{n<=X} lambda(n)^2 / X^{1.1}) at a few sample cutoffs.
    pub rankin_selberg_profile: Vec<(usize, f64)>,
    /// Largest partial-sum ratio in the profile.
    pub rankin_selberg_max: f64,
}

impl HeckeReport {
    pub fn passes(&self) -> bool {
        self.flagged.is_empty() && self.rankin_selberg_max <= 4.0
    }
}

const RESIDUAL_THRESHOLD: f64 = 1e-6;

pub fn hecke_validate(f: &MaassForm) -> HeckeReport {
    let n_max = f.coefficient_count();
    let mut max_residual = 0.0f64;
    let mut worst_pair = (1, 1);
    let mut flagged = Vec::new();
    for m in 2..=n_max {
        if m * m > n_max {
            break;
        }
        for n in m..=(n_max / m) {
            let mut expect = 0.0;
            let g = gcd(m, n);
            let mut d = 1;
            while d <= g {
                if g % d == 0 {
                    expect += f.lambda(m * n / (d * d));
                }
                d += 1;
            }
            let residual = (f.lambda(m) * f.lambda(n) - expect).abs();
            if residual > max_residual {
                max_residual = residual;
                worst_pair = (m, n);
            }
            if residual > RESIDUAL_THRESHOLD {
                flagged.push((m, n, residual));
            }
        }
    }
    let mut profile = Vec::new();
    let mut rankin_selberg_max = 0.0f64;
    let mut acc = 0.0;
    let mut next_sample = 10usize;
    for n in 1..=n_max {
        acc += f.lambda(n) * f.lambda(n);
        if n == next_sample || n == n_max {
            let ratio = acc / (n as f64).powf(1.1);
            profile.push((n, ratio));
            if ratio > rankin_selberg_max {
                rankin_selberg_max = ratio;
            }
            next_sample = (next_sample * 2).min(n_max);
        }
    }
    HeckeReport {
        max_residual,
        worst_pair,
        flagged,
        rankin_selberg_profile: profile,
        rankin_selberg_max,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coefficients that satisfy Hecke multiplicativity exactly: lambda(n)
/// multiplicative with lambda(p^k) generated from an arbitrary lambda(p)
/// by the recursion lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}).
/// Useful as a stand-in form in tests of machinery that only needs the
/// Hecke relations, not automorphy.
pub fn synthetic_multiplicative_form(n_max: usize) -> MaassForm {
    use crate::forms::Parity;
    let mut lam = vec![1.0f64; n_max];
    let lam_p = |p: usize| 2.0 * ((p as f64).ln().sin()); // arbitrary in [-2,2]
    let mut vals = vec![0.0f64; n_max + 1];
    vals[1] = 1.0;
    for n in 2..=n_max {
        // factor n = p^k * m
        let mut p = 2;
        while n % p != 0 {
            p += 1;
        }
        let mut k = 0;
        let mut pk = 1;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            k += 1;
            pk *= p;
        }
        if m > 1 {
            vals[n] = vals[pk] * vals[m];
        } else if k == 1 {
            vals[n] = lam_p(p);
        } else {
            vals[n] = lam_p(p) * vals[pk / p] - if k >= 2 { vals[pk / (p * p)] } else { 0.0 };
        }
    }
    for n in 1..=n_max {
        lam[n - 1] = vals[n];
    }
    MaassForm {
        t_j: 9.5,
        parity: Parity::Odd,
        hecke: lam,
        l1_sym2: 1.0,
        source_id: "synthetic-multiplicative".into(),
        scale: 1.0,
        central_value: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiplicative_form(n_max: usize) -> MaassForm {
        synthetic_multiplicative_form(n_max)
    }

    #[test]
    fn exact_multiplicative_data_passes() {
        let f = multiplicative_form(300);
        let report = hecke_validate(&f);
        assert!(report.max_residual < 1e-12, "residual {}", report.max_residual);
        assert!(report.flagged.is_empty());
    }

    #[test]
    fn hecke_relation_p2() {
        let f = multiplicative_form(100);
        // lambda(2)^2 = lambda(4) + 1 and lambda(2)lambda(3) = lambda(6).
        assert!((f.lambda(2) * f.lambda(2) - f.lambda(4) - 1.0).abs() < 1e-12);
        assert!((f.lambda(2) * f.lambda(3) - f.lambda(6)).abs() < 1e-12);
    }

    #[test]
    fn corruption_is_flagged() {
        let mut f = multiplicative_form(300);
        f.hecke[5] += 1e-2; // perturb lambda(6)
        let report = hecke_validate(&f);
        assert!(report
            .flagged
            .iter()
            .any(|&(m, n, _)| (m, n) == (2, 3)));
        assert!(report.max_residual > 5e-3);
    }
}
