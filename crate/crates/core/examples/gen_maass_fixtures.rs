//! Generate the bundled Hecke-Maass fixtures by Hejhal's algorithm at level
//! one: refine each spectral parameter from a published seed by implicit
//! automorphy on two horocycles, extract Hecke eigenvalues at primes from
//! low horocycles, rebuild composites by multiplicativity, compute
//! L(1, sym^2) from the quadrature norm and (for even forms) L(1/2) from the
//! period integral on the imaginary axis. Writes one JSON record per form
//! into crates/core/fixtures/maass.
//!
//! Run: cargo run --release -p automorph --example gen_maass_fixtures

use automorph::forms::{truncation_bound, Parity, UpperHalfPoint};
use automorph::ingest::FormRecord;
use automorph::quadrature::{integrate_domain, QuadratureSpec};
use automorph::specfun::{bessel_k_imag, lgamma_complex};
use automorph::Complex64;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Published approximations of the first spectral parameters (seed values;
/// the solver refines them to full f64 accuracy).
const SEEDS: &[(f64, Parity)] = &[
    (9.5336952613536, Parity::Odd),
    (12.1730083246802, Parity::Odd),
    (13.7797513518941, Parity::Even),
    (14.3585095183007, Parity::Odd),
    (16.1380731715695, Parity::Odd),
    (17.7385652855957, Parity::Even),
];

const COEFF_COUNT: usize = 2048;

fn cs(parity: Parity, arg: f64) -> f64 {
    match parity {
        Parity::Even => arg.cos(),
        Parity::Odd => arg.sin(),
    }
}

/// sqrt(y) K_{ir}(2 pi n y); zero once the argument is deep in the
/// exponential tail.
fn c_coeff(r: f64, n: usize, y: f64) -> f64 {
    let x = TWO_PI * n as f64 * y;
    if x >= 700.0 {
        return 0.0;
    }
    y.sqrt() * bessel_k_imag(r, x).expect("bessel in range")
}

/// Solve the implicit-automorphy linear system on the horocycle y0 for the
/// first m0 coefficients, normalized to a_1 = 1.
fn solve_at(r: f64, parity: Parity, y0: f64, m0: usize) -> Vec<f64> {
    let q2 = 2 * m0 + 16;
    // V[n][k] = (2/q2) sum_m c_k(y*_m) cs(2 pi k x*_m) cs(2 pi n x_m)
    let mut v = vec![vec![0.0f64; m0 + 1]; m0 + 1];
    for m in 0..q2 {
        let x = (m as f64 + 0.5) / q2 as f64 - 0.5;
        let z = UpperHalfPoint::new(x, y0).reduced();
        let row: Vec<f64> = (1..=m0)
            .map(|k| c_coeff(r, k, z.y) * cs(parity, TWO_PI * k as f64 * z.x))
            .collect();
        for n in 1..=m0 {
            let w = cs(parity, TWO_PI * n as f64 * x) * 2.0 / q2 as f64;
            for k in 1..=m0 {
                v[n][k] += row[k - 1] * w;
            }
        }
    }
    for n in 1..=m0 {
        v[n][n] -= c_coeff(r, n, y0);
    }
    // Least squares over rows n = 1..m0 for unknowns a_2..a_m0 with a_1 = 1.
    // Columns are equilibrated to unit norm and the normal equations get a
    // small Tikhonov term: high-index columns sit below the rounding noise
    // of the cancellation in V and would otherwise explode; damping pins
    // them near zero without touching the well-conditioned low coefficients.
    let dim = m0 - 1;
    let mut w = vec![0.0f64; dim];
    for (i, wi) in w.iter_mut().enumerate() {
        let mut s = 0.0;
        for n in 1..=m0 {
            s += v[n][i + 2] * v[n][i + 2];
        }
        *wi = s.sqrt().max(1e-300);
    }
    let mut g = vec![vec![0.0f64; dim + 1]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = 0.0;
            for n in 1..=m0 {
                acc += v[n][i + 2] * v[n][j + 2];
            }
            g[i][j] = acc / (w[i] * w[j]);
        }
        g[i][i] += 1e-22;
        let mut acc = 0.0;
        for n in 1..=m0 {
            acc += v[n][i + 2] * v[n][1];
        }
        g[i][dim] = -acc / w[i];
    }
    // Gauss-Jordan; the damped normal matrix is positive definite, so
    // diagonal pivots are safe
    for col in 0..dim {
        let p = g[col][col];
        assert!(p.abs() > 1e-300, "singular normal equations");
        for row in 0..dim {
            if row != col {
                let f = g[row][col] / p;
                for j in col..=dim {
                    let sub = f * g[col][j];
                    g[row][j] -= sub;
                }
            }
        }
    }
    let mut a = vec![0.0; m0 + 1];
    a[1] = 1.0;
    for i in 0..dim {
        a[i + 2] = g[i][dim] / g[i][i] / w[i];
    }
    a
}

/// Coefficient mismatch between two horocycles; zero at an eigenvalue.
fn coeff_diffs(r: f64, parity: Parity, m0: usize) -> Vec<f64> {
    let a = solve_at(r, parity, 0.47, m0);
    let b = solve_at(r, parity, 0.39, m0);
    (2..=8.min(m0)).map(|i| a[i] - b[i]).collect()
}

/// Refine the spectral parameter by secant iteration on the coefficient
/// mismatch with the steepest slope near the seed.
fn refine_eigenvalue(seed: f64, parity: Parity) -> f64 {
    let m0 = truncation_bound(seed, 0.39, 1e-14) + 2;
    let h = 3e-5;
    let d_lo = coeff_diffs(seed - h, parity, m0);
    let d_hi = coeff_diffs(seed + h, parity, m0);
    let idx = (0..d_lo.len())
        .max_by(|&i, &j| {
            (d_hi[i] - d_lo[i])
                .abs()
                .total_cmp(&(d_hi[j] - d_lo[j]).abs())
        })
        .unwrap();
    let mut r0 = seed - h;
    let mut r1 = seed + h;
    let mut g0 = d_lo[idx];
    let mut g1 = d_hi[idx];
    for _ in 0..60 {
        let denom = g1 - g0;
        if denom == 0.0 {
            break;
        }
        let mut step = -g1 * (r1 - r0) / denom;
        step = step.clamp(-0.01, 0.01);
        let r2 = r1 + step;
        if (r2 - r1).abs() < 5e-13 {
            return r2;
        }
        r0 = r1;
        g0 = g1;
        r1 = r2;
        g1 = coeff_diffs(r1, parity, m0)[idx];
    }
    r1
}

/// Evaluate sum_n lam[n] c_n(y) cs(2 pi n x) at the reduction of x + iy.
fn eval_reduced(r: f64, parity: Parity, lam: &[f64], x: f64, y: f64) -> f64 {
    let z = UpperHalfPoint::new(x, y).reduced();
    let m = truncation_bound(r, z.y, 1e-12) + 2;
    assert!(m < lam.len(), "need {m} coefficients at y = {}", z.y);
    (1..=m)
        .map(|n| lam[n] * c_coeff(r, n, z.y) * cs(parity, TWO_PI * n as f64 * z.x))
        .sum()
}

/// Extract a_n for n in [n_lo, n_hi] from a horocycle low enough that the
/// whole block sits in the oscillatory K-Bessel range; two nearby horocycles
/// guard against K zeros in the denominator.
fn extract_block(
    r: f64,
    parity: Parity,
    lam_known: &[f64],
    n_lo: usize,
    n_hi: usize,
) -> Vec<f64> {
    let mut num = vec![[0.0f64; 2]; n_hi - n_lo + 1];
    let mut den = vec![[0.0f64; 2]; n_hi - n_lo + 1];
    for (pass, scale) in [(0usize, 1.0f64), (1, 1.09)] {
        let y0 = scale * (r + 2.0) / (TWO_PI * n_hi as f64);
        let alias = truncation_bound(r, y0, 1e-9);
        let q2 = (n_hi + alias + 64 + 1) & !1;
        let mut f_star = Vec::with_capacity(q2);
        for m in 0..q2 {
            let x = (m as f64 + 0.5) / q2 as f64 - 0.5;
            f_star.push(eval_reduced(r, parity, lam_known, x, y0));
        }
        for n in n_lo..=n_hi {
            let mut acc = 0.0;
            for (m, f) in f_star.iter().enumerate() {
                let x = (m as f64 + 0.5) / q2 as f64 - 0.5;
                acc += f * cs(parity, TWO_PI * n as f64 * x);
            }
            num[n - n_lo][pass] = acc * 2.0 / q2 as f64;
            den[n - n_lo][pass] = c_coeff(r, n, y0);
        }
    }
    (0..=n_hi - n_lo)
        .map(|i| {
            let pass = if den[i][0].abs() >= den[i][1].abs() {
                0
            } else {
                1
            };
            num[i][pass] / den[i][pass]
        })
        .collect()
}

/// Rebuild the full coefficient table from prime values by the Hecke
/// recursion lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}) and
/// multiplicativity.
fn multiplicative_fill(lam_p: &[(usize, f64)], n_max: usize) -> Vec<f64> {
    let mut vals = vec![0.0f64; n_max + 1];
    vals[1] = 1.0;
    let p_of = |p: usize| {
        lam_p
            .iter()
            .find(|&&(q, _)| q == p)
            .unwrap_or_else(|| panic!("missing prime {p}"))
            .1
    };
    for n in 2..=n_max {
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
            vals[n] = p_of(p);
        } else {
            vals[n] = p_of(p) * vals[pk / p] - if k >= 2 { vals[pk / (p * p)] } else { 0.0 };
        }
    }
    vals
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// L(1, sym^2) from the L^2 norm over the fundamental domain:
/// 1 = rho^2 int |4 sqrt(y) sum lam K cs|^2 dmu with
/// rho^2 = cosh(pi r) / (2 L).
fn l1_sym2_from_norm(r: f64, parity: Parity, lam: &[f64]) -> f64 {
    let boost = (PI * r / 2.0).exp();
    let f = |y: f64, xs: &[f64]| {
        let m = truncation_bound(r, y, 1e-9) + 2;
        let terms: Vec<f64> = (1..=m)
            .map(|n| 4.0 * boost * lam[n] * c_coeff(r, n, y))
            .collect();
        Ok(xs
            .iter()
            .map(|&x| {
                let v: f64 = terms
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * cs(parity, TWO_PI * (i + 1) as f64 * x))
                    .sum();
                Complex64::new(v * v, 0.0)
            })
            .collect())
    };
    // y_max past the K-Bessel transition x = r so the tail truly decays
    let spec = QuadratureSpec::new(r / TWO_PI + 2.5, 1e-5, 60_000_000)
        .unwrap()
        .with_oscillation(r);
    let out = integrate_domain(&f, &spec).expect("norm quadrature");
    out.value.re * (1.0 + (-TWO_PI * r).exp()) / 4.0
}

/// L(1/2) for even forms from the period integral
/// Lambda(1/2) = 2 int_1^inf g(iy) dy/y, g(iy) = 4 sum lam(n) c_n(y).
fn central_value_period(r: f64, lam: &[f64]) -> f64 {
    let boost = (PI * r / 2.0).exp();
    let g = |y: f64| -> f64 {
        let m = truncation_bound(r, y, 1e-12) + 2;
        (1..=m).map(|n| 4.0 * boost * lam[n] * c_coeff(r, n, y)).sum()
    };
    // 12-point Gauss per panel on [1, 8]
    let gl_x = [
        0.1252334085114689,
        0.3678314989981802,
        0.5873179542866175,
        0.7699026741943047,
        0.9041172563704749,
        0.9815606342467192,
    ];
    let gl_w = [
        0.2491470458134028,
        0.2334925365383548,
        0.2031674267230659,
        0.1600783285433462,
        0.1069393259953184,
        0.0471753363865118,
    ];
    let mut lambda_half = 0.0;
    let panels = 40;
    for p in 0..panels {
        let a = 1.0 + 7.0 * p as f64 / panels as f64;
        let b = 1.0 + 7.0 * (p + 1) as f64 / panels as f64;
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for i in 0..6 {
            for sign in [-1.0, 1.0] {
                let y = mid + sign * half * gl_x[i];
                lambda_half += half * gl_w[i] * g(y) / y;
            }
        }
    }
    lambda_half *= 2.0;
    // L_inf(1/2) = pi^{-1/2} |Gamma(1/4 + ir/2)|^2, boosted by the same
    // e^{pi r / 2} applied to g
    let lg = lgamma_complex(Complex64::new(0.25, r / 2.0)).unwrap();
    let l_inf = PI.powf(-0.5) * (2.0 * lg.re + PI * r / 2.0).exp();
    lambda_half / l_inf
}

fn main() {
    let out_dir = std::path::Path::new("crates/core/fixtures/maass");
    std::fs::create_dir_all(out_dir).expect("fixture directory");
    for &(seed, parity) in SEEDS {
        let tag = match parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        println!("=== seed {seed} ({tag}) ===");
        let r = refine_eigenvalue(seed, parity);
        println!("refined spectral parameter: {r:.13}");

        let m0 = truncation_bound(r, 0.39, 1e-14) + 2;
        let a47 = solve_at(r, parity, 0.47, m0);
        let a39 = solve_at(r, parity, 0.39, m0);
        let resid = (2..=10.min(m0))
            .map(|i| (a47[i] - a39[i]).abs())
            .fold(0.0f64, f64::max);
        println!("horocycle coefficient agreement: {resid:.3e} over the first 10 coefficients");

        // the implicit solve bootstraps the horocycle evaluations; every
        // prime is then extracted from low horocycles block by block
        let mut lam_p: Vec<(usize, f64)> = Vec::new();
        let mut lam_known = a47.clone();
        let mut lo = 2;
        let mut block_dev = 0.0f64;
        let mut phase1_dev = 0.0f64;
        while lo <= COEFF_COUNT {
            let hi = lo.next_power_of_two().max(64).min(COEFF_COUNT);
            let block = extract_block(r, parity, &lam_known, lo, hi);
            for (i, &v) in block.iter().enumerate() {
                let n = lo + i;
                if is_prime(n) {
                    lam_p.push((n, v));
                } else {
                    // consistency of directly extracted composites against
                    // the multiplicative rebuild from earlier blocks
                    let mut p = 2;
                    while n % p != 0 {
                        p += 1;
                    }
                    let mut m = n;
                    let mut pk = 1;
                    while m % p == 0 {
                        m /= p;
                        pk *= p;
                    }
                    if m > 1 && pk < lo && m < lo {
                        block_dev = block_dev.max((v - lam_known[pk] * lam_known[m]).abs());
                    }
                }
                if n <= 8 {
                    phase1_dev = phase1_dev.max((v - a47[n]).abs());
                }
            }
            lam_known = multiplicative_fill(&lam_p, hi);
            lo = hi + 1;
        }
        let lam = multiplicative_fill(&lam_p, COEFF_COUNT);
        println!("direct-vs-multiplicative composite deviation: {block_dev:.3e}");
        println!("block extraction vs implicit solve (n <= 8): {phase1_dev:.3e}");

        // automorphy spot check away from the solve horocycles
        let auto_resid = [(0.13, 0.21), (-0.31, 0.4), (0.41, 0.09)]
            .iter()
            .map(|&(x, y)| {
                let direct = eval_reduced(r, parity, &lam, x, y);
                let moved = eval_reduced(r, parity, &lam, x + 1.0, y);
                (direct - moved).abs()
            })
            .fold(0.0f64, f64::max);
        println!("automorphy spot residual (scale e^(-pi r/2) = {:.2e}): {auto_resid:.3e}",
            (-PI * r / 2.0).exp());

        let l1 = l1_sym2_from_norm(r, parity, &lam);
        println!("L(1, sym^2) from norm: {l1:.10}");
        let central = match parity {
            Parity::Even => {
                let c = central_value_period(r, &lam);
                println!("L(1/2) from period integral: {c:.10}");
                Some(c)
            }
            Parity::Odd => None,
        };

        let record = FormRecord::new(
            format!("{r:.12}"),
            parity,
            lam[1..=COEFF_COUNT]
                .iter()
                .map(|v| format!("{v:.15}"))
                .collect(),
            l1,
            central,
            "hejhal-level1-local".into(),
            "2026-08-24T00:00:00Z".into(),
        );
        let name = format!("maass_{:012.8}_{tag}.json", r);
        record.save(&out_dir.join(&name)).expect("write fixture");
        println!("wrote {name}\n");
    }
}
