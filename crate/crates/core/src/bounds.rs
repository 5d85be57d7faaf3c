//! Piecewise exponent functions and regime tables for the moment bounds:
//! the four-variable exponent Q with its three-case table, the three-variable
//! Eisenstein variant, the exact Gamma-product envelope H with its Stirling
//! comparison, and the W(t, t_g) regime table.

use crate::specfun::lgamma_complex;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Q(t_j, t, t_g, t_k) as the explicit absolute-value combination.
pub fn q_direct(t_j: f64, t: f64, t_g: f64, t_k: f64) -> f64 {
    0.5 * ((2.0 * t - t_j).abs()
        + (2.0 * t + t_j).abs()
        + (t_j + t_g + t_k).abs()
        + (t_j - t_g + t_k).abs()
        + (t_j + t_g - t_k).abs()
        + (t_j - t_g - t_k).abs())
        - 2.0 * t
        - t_j
        - t_g
        - t_k
}

/// The same exponent through the three-case piecewise table, labeled by the
/// case in the 2t-versus-(t_g -+ t_k) split and the t_j interval.
pub fn q_piecewise(t_j: f64, t: f64, t_g: f64, t_k: f64) -> Result<(&'static str, f64)> {
    if t_k > t_g {
        return Err(Error::OrderingViolation(format!(
            "the piecewise table assumes t_k <= t_g, got t_k = {t_k}, t_g = {t_g}"
        )));
    }
    let out = if 2.0 * t <= t_g - t_k {
        if t_j <= 2.0 * t {
            ("small: t_g - t_k - t_j", t_g - t_k - t_j)
        } else if t_j <= t_g - t_k {
            ("small: t_g - 2t - t_k", t_g - 2.0 * t - t_k)
        } else if t_j <= t_g + t_k {
            ("small: t_j - 2t", t_j - 2.0 * t)
        } else {
            ("small: 2t_j - 2t - t_g - t_k", 2.0 * t_j - 2.0 * t - t_g - t_k)
        }
    } else if 2.0 * t <= t_g + t_k {
        if t_j <= t_g - t_k {
            ("middle: t_g - t_k - t_j", t_g - t_k - t_j)
        } else if t_j <= 2.0 * t {
            ("middle: 0", 0.0)
        } else if t_j <= t_g + t_k {
            ("middle: t_j - 2t", t_j - 2.0 * t)
        } else {
            ("middle: 2t_j - 2t - t_g - t_k", 2.0 * t_j - 2.0 * t - t_g - t_k)
        }
    } else {
        if t_j <= t_g - t_k {
            ("large: t_g - t_k - t_j", t_g - t_k - t_j)
        } else if t_j <= t_g + t_k {
            ("large: 0", 0.0)
        } else if t_j <= 2.0 * t {
            ("large: t_j - t_g - t_k", t_j - t_g - t_k)
        } else {
            ("large: 2t_j - 2t - t_g - t_k", 2.0 * t_j - 2.0 * t - t_g - t_k)
        }
    };
    Ok(out)
}

/// The three-variable exponent of the Eisenstein J-term,
/// Q(t_k, t, t_j) as the explicit absolute-value combination.
pub fn q3_direct(t_k: f64, t: f64, t_j: f64) -> f64 {
    0.5 * ((t + t_k + t_j).abs()
        + (t + t_k - t_j).abs()
        + (t - t_k + t_j).abs()
        + (t - t_k - t_j).abs()
        + (t_k + 2.0 * t).abs()
        + (t_k - 2.0 * t).abs())
        - 3.0 * t
        - t_j
        - t_k
}

/// Q(t_k, t, t_j) through the four-band table, checked against the direct
/// formula on every call. Assumes the small-eigenvalue regime t_j <= t.
pub fn q3_eisenstein(t_k: f64, t: f64, t_j: f64) -> Result<f64> {
    if t_j > t {
        return Err(Error::OrderingViolation(format!(
            "the band table assumes t_j <= t, got t_j = {t_j}, t = {t}"
        )));
    }
    let piecewise = if t_k >= 2.0 * t {
        2.0 * t_k - 3.0 * t - t_j
    } else if t_k >= t + t_j {
        t_k - t - t_j
    } else if t_k >= t - t_j {
        0.0
    } else {
        t - t_j - t_k
    };
    let direct = q3_direct(t_k, t, t_j);
    if (piecewise - direct).abs() > 1e-9 * (1.0 + direct.abs()) {
        return Err(Error::Invalid(format!(
            "piecewise value {piecewise} disagrees with direct value {direct}"
        )));
    }
    Ok(piecewise)
}

fn re_lgamma(re: f64, im: f64) -> Result<f64> {
    Ok(lgamma_complex(Complex64::new(re, im))?.re)
}

/// The exact Gamma-factor modulus H(t_k, t, t_j):
/// pi^2 prod Gamma((1/2+it +- it_k +- it_j)/2) prod Gamma((1/2-2it +- it_k)/2)
/// |Gamma((1/2+it_k)/2)|^2 over
/// |Gamma(1/2+it_k)|^2 |Gamma(1/2+it_j)| |Gamma(1/2+it)|^3, as a log-space
/// sum of |Gamma| moduli.
pub fn h_factor_exact(t_k: f64, t: f64, t_j: f64) -> Result<f64> {
    for &(name, v) in &[("t_k", t_k), ("t", t), ("t_j", t_j)] {
        if v.abs() > 200.0 {
            return Err(Error::OutOfRegime(format!(
                "Gamma evaluation gated to |{name}| <= 200, got {v}"
            )));
        }
    }
    let mut log_h = 2.0 * PI.ln();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            log_h += re_lgamma(0.25, 0.5 * (t + s1 * t_k + s2 * t_j))?;
        }
    }
    for s3 in [1.0, -1.0] {
        log_h += re_lgamma(0.25, 0.5 * (-2.0 * t + s3 * t_k))?;
    }
    log_h += 2.0 * re_lgamma(0.25, 0.5 * t_k)?;
    log_h -= 2.0 * re_lgamma(0.5, t_k)?;
    log_h -= re_lgamma(0.5, t_j)?;
    log_h -= 3.0 * re_lgamma(0.5, t)?;
    Ok(log_h.exp())
}

/// The Stirling envelope that H is compared against:
/// 8 pi^3 t_k^{-1/2} prod (1+|t +- t_j +- t_k|)^{-1/4}
/// prod (1+|2t +- t_k|)^{-1/4} exp(-(pi/2) Q(t_k, t, t_j)). The constant
/// 8 pi^3 collects the sqrt(2 pi) and halved-argument factors of Stirling
/// over the eight numerator and six denominator Gamma factors, so the
/// exact-to-envelope ratio settles near 1.
pub fn h_factor_envelope(t_k: f64, t: f64, t_j: f64) -> f64 {
    let mut log_e = (8.0 * PI.powi(3)).ln() - 0.5 * t_k.abs().ln();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            log_e -= 0.25 * (1.0 + (t + s1 * t_j + s2 * t_k).abs()).ln();
        }
    }
    for s3 in [1.0, -1.0] {
        log_e -= 0.25 * (1.0 + (2.0 * t + s3 * t_k).abs()).ln();
    }
    log_e -= 0.5 * PI * q3_direct(t_k, t, t_j);
    log_e.exp()
}

/// The slack parameters of the regime table, with their documented defaults.
#[derive(Debug, Clone, Copy)]
pub struct SlackParams {
    pub eps: f64,
    pub eps_prime: f64,
    pub eta: f64,
    pub delta: f64,
}

impl Default for SlackParams {
    fn default() -> Self {
        Self {
            eps: 0.01,
            eps_prime: 0.01,
            eta: 0.5,
            delta: 0.01,
        }
    }
}

/// One classified point of the W(t, t_g) table.
#[derive(Debug, Clone)]
pub struct RegimeBound {
    pub regime: usize,
    pub label: &'static str,
    pub bound: f64,
    pub log_bound: f64,
}

const W_LABELS: [&str; 6] = [
    "t_g^{-100}",
    "t^eps / t^{1/9 + delta/3}",
    "t^eps / (t^{1/9 + delta/3} (1 + |2t - t_g|)^{1/6 + delta/3})",
    "t^eps / (t_g^{1/6} t^{1/6})",
    "t^eps / (t_g^{1/6} t^{1/12})",
    "t^eps t_g^{1/12} / t^{1/6}",
];

fn w_predicates(t: f64, t_g: f64, p: &SlackParams) -> [bool; 6] {
    let slack = t_g.powf(p.eps);
    [
        t_g >= 2.0 * t + slack,
        2.0 * t - slack <= t_g && t_g < 2.0 * t + slack,
        (2.0 - p.eta) * t <= t_g && t_g < 2.0 * t - slack,
        t.powf(2.0 / 3.0 + p.eps) <= t_g && t_g < (2.0 - p.eta) * t,
        t.powf(1.0 / 3.0) <= t_g && t_g < t.powf(2.0 / 3.0 + p.eps),
        2.0 * t.powf(p.eps_prime) <= t_g && t_g < t.powf(1.0 / 3.0),
    ]
}

fn w_log_bound(regime: usize, t: f64, t_g: f64, p: &SlackParams) -> f64 {
    let e = p.eps * t.ln();
    match regime {
        0 => -100.0 * t_g.ln(),
        1 => e - (1.0 / 9.0 + p.delta / 3.0) * t.ln(),
        2 => {
            e - (1.0 / 9.0 + p.delta / 3.0) * t.ln()
                - (1.0 / 6.0 + p.delta / 3.0) * (1.0 + (2.0 * t - t_g).abs()).ln()
        }
        3 => e - t_g.ln() / 6.0 - t.ln() / 6.0,
        4 => e - t_g.ln() / 6.0 - t.ln() / 12.0,
        _ => e + t_g.ln() / 12.0 - t.ln() / 6.0,
    }
}

/// Classify (t, t_g) into the regime table; the first matching row wins at
/// exact boundaries. Points below the declared range t_g >= 2 t^{eps'} are
/// reported as uncovered, never extrapolated.
pub fn w_table(t: f64, t_g: f64, p: &SlackParams) -> Result<RegimeBound> {
    if !(t > 0.0 && t_g > 0.0) {
        return Err(Error::Invalid(format!("need t, t_g > 0, got ({t}, {t_g})")));
    }
    let fired = w_predicates(t, t_g, p);
    let Some(regime) = fired.iter().position(|&b| b) else {
        return Err(Error::UncoveredRange(format!(
            "(t, t_g) = ({t}, {t_g}) is below the declared range t_g >= 2 t^eps'"
        )));
    };
    let log_bound = w_log_bound(regime, t, t_g, p);
    Ok(RegimeBound {
        regime: regime + 1,
        label: W_LABELS[regime],
        bound: log_bound.exp(),
        log_bound,
    })
}

/// CSV export of the table over explicit points; columns t, t_g, regime,
/// bound. Uncovered points are skipped.
pub fn w_table_csv(points: &[(f64, f64)], p: &SlackParams) -> String {
    let mut out = String::from("t,t_g,regime,bound\n");
    for &(t, t_g) in points {
        if let Ok(row) = w_table(t, t_g, p) {
            let _ = writeln!(out, "{t},{t_g},{},{:e}", row.regime, row.bound);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng_stream(seed: u64, n: usize) -> Vec<f64> {
        // splitmix64 stream mapped to [0, 1)
        let mut state = seed;
        (0..n)
            .map(|_| {
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                z = z ^ (z >> 31);
                (z >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect()
    }

    #[test]
    fn q_examples_from_the_piecewise_table() {
        let (label, v) = q_piecewise(1.0, 10.0, 30.0, 2.0).unwrap();
        assert_eq!(v, 27.0);
        assert!(label.starts_with("small"));
        let (label, v) = q_piecewise(25.0, 10.0, 18.0, 5.0).unwrap();
        assert_eq!(v, 7.0);
        assert!(label.starts_with("middle"));
        // t_j = 0 collapses to t_g - t_k in every split
        for &(t, t_g, t_k) in &[(3.0, 20.0, 4.0), (9.0, 20.0, 4.0), (15.0, 20.0, 4.0)] {
            assert_eq!(q_piecewise(0.0, t, t_g, t_k).unwrap().1, t_g - t_k);
            assert_eq!(q_direct(0.0, t, t_g, t_k), t_g - t_k);
        }
        // zero band boundary
        assert_eq!(q_piecewise(13.0, 10.0, 18.0, 5.0).unwrap().1, 0.0);
        assert!(q_piecewise(1.0, 1.0, 2.0, 3.0).is_err());
    }

    #[test]
    fn q_piecewise_matches_direct_on_random_tuples() {
        let u = rng_stream(7, 400_000);
        for c in u.chunks_exact(4) {
            let (t_j, t, t_k) = (60.0 * c[0], 60.0 * c[1], 60.0 * c[3]);
            let t_g = t_k + 60.0 * c[2];
            let (_, p) = q_piecewise(t_j, t, t_g, t_k).unwrap();
            let d = q_direct(t_j, t, t_g, t_k);
            assert!((p - d).abs() < 1e-12 * (1.0 + d.abs()), "({t_j},{t},{t_g},{t_k})");
            assert!(d >= -1e-12);
        }
    }

    #[test]
    fn q_piecewise_matches_direct_on_exact_rational_grid() {
        // quarter-integer grid: every branch value is exactly representable
        for i in 0..=24u32 {
            for j in 0..=24 {
                for k in 0..=24 {
                    for l in 0..=k {
                        let (t_j, t) = (i as f64 / 4.0, j as f64 / 4.0);
                        let (t_g, t_k) = (k as f64 / 4.0, l as f64 / 4.0);
                        let (_, p) = q_piecewise(t_j, t, t_g, t_k).unwrap();
                        assert_eq!(p, q_direct(t_j, t, t_g, t_k));
                    }
                }
            }
        }
    }

    #[test]
    fn q3_examples_and_oracle() {
        for &t_j in &[0.0, 1.0, 4.0] {
            assert_eq!(q3_eisenstein(10.0, 10.0, t_j).unwrap(), 0.0);
        }
        assert_eq!(q3_eisenstein(30.0, 10.0, 0.0).unwrap(), 30.0);
        assert!(q3_eisenstein(5.0, 4.0, 6.0).is_err());
        let u = rng_stream(11, 300_000);
        for c in u.chunks_exact(3) {
            let t = 1.0 + 50.0 * c[1];
            let (t_k, t_j) = (120.0 * c[0], t * c[2]);
            q3_eisenstein(t_k, t, t_j).unwrap();
        }
        // exact grid
        for i in 0..=60u32 {
            for j in 1..=20 {
                for l in 0..=j {
                    q3_eisenstein(i as f64 / 2.0, j as f64 / 2.0, l as f64 / 2.0).unwrap();
                }
            }
        }
    }

    #[test]
    fn h_factor_tracks_stirling_envelope() {
        let ratio = h_factor_exact(100.0, 100.0, 10.0).unwrap()
            / h_factor_envelope(100.0, 100.0, 10.0);
        assert!((0.2..=5.0).contains(&ratio), "ratio {ratio}");
        // evenness in t_k of the defining product
        let a = h_factor_exact(37.0, 50.0, 5.0).unwrap();
        let b = h_factor_exact(-37.0, 50.0, 5.0).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
        assert!(h_factor_exact(250.0, 10.0, 1.0).is_err());
    }

    #[test]
    fn h_factor_exponential_drop_and_log_convexity() {
        let q_gap = q3_direct(150.0, 50.0, 5.0) - q3_direct(100.0, 50.0, 5.0);
        let drop = h_factor_exact(150.0, 50.0, 5.0).unwrap()
            / h_factor_exact(100.0, 50.0, 5.0).unwrap();
        let envelope_drop = h_factor_envelope(150.0, 50.0, 5.0)
            / h_factor_envelope(100.0, 50.0, 5.0);
        assert!((-0.5 * PI * q_gap).exp() > 0.0);
        assert!(drop / envelope_drop < 3.0 && envelope_drop / drop < 3.0);
        // log H close to linear across short segments away from band edges
        for &base in &[120.0f64, 130.0, 140.0] {
            let la = h_factor_exact(base, 50.0, 5.0).unwrap().ln();
            let lb = h_factor_exact(base + 1.0, 50.0, 5.0).unwrap().ln();
            let lc = h_factor_exact(base + 2.0, 50.0, 5.0).unwrap().ln();
            let mid = 0.5 * (la + lc);
            assert!((lb - mid).abs() < 0.1 * lb.abs(), "t_k = {base}");
        }
    }

    #[test]
    fn w_table_examples() {
        let p = SlackParams::default();
        let r = w_table(100.0, 1e6, &p).unwrap();
        assert_eq!(r.regime, 1);
        assert!((r.log_bound - (-100.0 * 1e6f64.ln())).abs() < 1e-9);
        let r = w_table(100.0, 200.0, &p).unwrap();
        assert_eq!(r.regime, 2);
        let expect = 100.0f64.powf(p.eps) / 100.0f64.powf(1.0 / 9.0 + p.delta / 3.0);
        assert!((r.bound - expect).abs() < 1e-12 * expect);
        assert!(matches!(
            w_table(100.0, 0.5, &p),
            Err(Error::UncoveredRange(_))
        ));
    }

    #[test]
    fn w_predicates_partition_the_admissible_quadrant() {
        let p = SlackParams::default();
        let u = rng_stream(23, 200_000);
        for c in u.chunks_exact(2) {
            let t = 10.0 + 990.0 * c[0];
            let t_g = 2.0 * t.powf(p.eps_prime) + (3.0 * t - 2.0 * t.powf(p.eps_prime)) * c[1];
            let fired = w_predicates(t, t_g, &p);
            assert_eq!(
                fired.iter().filter(|&&b| b).count(),
                1,
                "(t, t_g) = ({t}, {t_g}): {fired:?}"
            );
        }
    }

    #[test]
    fn w_crossover_rows_three_four_match_up_to_slack() {
        let p = SlackParams::default();
        let t = 1e4f64;
        let t_g = (2.0 - p.eta) * t;
        let lo = w_table(t, t_g - 1e-6, &p).unwrap();
        let hi = w_table(t, t_g + 1e-6, &p).unwrap();
        assert_eq!(lo.regime, 4);
        assert_eq!(hi.regime, 3);
        let gap = (lo.log_bound - hi.log_bound).abs();
        assert!(gap < 20.0 * p.eps * t.ln(), "gap {gap}");
    }

    #[test]
    fn w_csv_export_layout() {
        let p = SlackParams::default();
        let csv = w_table_csv(&[(100.0, 1e6), (100.0, 200.0), (100.0, 0.5)], &p);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "t,t_g,regime,bound");
        assert_eq!(lines.len(), 3, "uncovered point must be skipped");
        assert!(lines[1].starts_with("100,1000000,1,"));
    }
}
