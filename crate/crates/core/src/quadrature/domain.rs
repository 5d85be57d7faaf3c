//! Tensor quadrature on the truncated fundamental domain
//! F_Y = { |x| <= 1/2, x^2 + y^2 >= 1, y <= Y } with measure dx dy / y^2.
//!
//! The domain splits at y = 1. Below, the substitution y = cos(theta) removes
//! the square-root kink of the arc boundary; above, rows are placed in ln y.
//! Refinement doubles the grid density until two resolutions agree, and the
//! part above Y is modeled from the measured decay of the constant term.

use super::{DomainIntegral, QuadratureSpec, RowIntegrand};
use crate::forms::truncation_bound;
use crate::{Error, Result};
use num_complex::Complex64;

pub(crate) const GL12_X: [f64; 6] = [
    0.12523340851146892,
    0.3678314989981802,
    0.5873179542866175,
    0.7699026741943047,
    0.9041172563704749,
    0.9815606342467192,
];
pub(crate) const GL12_W: [f64; 6] = [
    0.24914704581340277,
    0.23349253653835481,
    0.20316742672306592,
    0.16007832854334622,
    0.10693932599531843,
    0.04717533638651183,
];

fn gl_nodes(a: f64, b: f64, panels: usize, xs: &mut Vec<f64>, ws: &mut Vec<f64>) {
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        for i in 0..6 {
            for sign in [-1.0f64, 1.0] {
                xs.push(mid + sign * half * GL12_X[i]);
                ws.push(half * GL12_W[i]);
            }
        }
    }
}

struct Row {
    y: f64,
    wy: f64,
    xs: Vec<f64>,
    ws: Vec<f64>,
}

/// Panels needed to resolve the Fourier content of a row of length `len`.
fn x_panels(len: f64, y: f64, osc: f64, d: usize) -> usize {
    let n_est = truncation_bound(osc, y, 1e-8) as f64;
    (d as f64 * (len * (n_est + 2.0) / 2.5)).ceil().max(1.0) as usize
}

fn build_rows(spec: &QuadratureSpec, d: usize) -> Vec<Row> {
    let osc = spec.osc_hint;
    let mut rows = Vec::new();

    // Region below y = 1: theta in [0, pi/6], y = cos(theta), and
    // dy f / y^2 -> dtheta sin(theta)/cos^2(theta) f.
    let pa = d * (2 + (osc / 8.0).ceil() as usize);
    let (mut ths, mut tws) = (Vec::new(), Vec::new());
    gl_nodes(0.0, std::f64::consts::FRAC_PI_6, pa, &mut ths, &mut tws);
    for (&th, &w) in ths.iter().zip(&tws) {
        let y = th.cos();
        let x0 = th.sin();
        let len = 0.5 - x0;
        if len <= 0.0 {
            continue;
        }
        let panels = x_panels(len, y, osc, d);
        let (mut xs, mut ws) = (Vec::new(), Vec::new());
        gl_nodes(x0, 0.5, panels, &mut xs, &mut ws);
        gl_nodes(-0.5, -x0, panels, &mut xs, &mut ws);
        rows.push(Row {
            y,
            wy: w * th.sin() / (y * y),
            xs,
            ws,
        });
    }

    // Region y in [1, y_max], rows in u = ln y: dy/y^2 = e^{-u} du.
    let l = spec.y_max.ln();
    let pb = d * (3 + (osc * l / 10.0).ceil() as usize);
    let (mut us, mut uws) = (Vec::new(), Vec::new());
    gl_nodes(0.0, l, pb, &mut us, &mut uws);
    for (&u, &w) in us.iter().zip(&uws) {
        let y = u.exp();
        let panels = x_panels(1.0, y, osc, d);
        let (mut xs, mut ws) = (Vec::new(), Vec::new());
        gl_nodes(-0.5, 0.5, panels, &mut xs, &mut ws);
        rows.push(Row {
            y,
            wy: w * (-u).exp(),
            xs,
            ws,
        });
    }
    rows
}

fn integrate_once<F: RowIntegrand + ?Sized>(f: &F, rows: &[Row]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for row in rows {
        let vals = f.eval_row(row.y, &row.xs)?;
        let mut racc = Complex64::new(0.0, 0.0);
        for (v, w) in vals.iter().zip(&row.ws) {
            racc += v * *w;
        }
        acc += racc * row.wy;
    }
    Ok(acc)
}

/// Integral over the truncated domain F_Y, no tail model. Returns
/// (value, error estimate, evaluations, budget flag).
pub(crate) fn integrate_truncated<F: RowIntegrand + ?Sized>(
    f: &F,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64, usize, bool)> {
    let mut evals = 0usize;
    let mut prev: Option<Complex64> = None;
    let mut d = 1usize;
    loop {
        let rows = build_rows(spec, d);
        let cost: usize = rows.iter().map(|r| r.xs.len()).sum();
        if evals + cost > spec.max_evals {
            return match prev {
                Some(p) => Ok((p, f64::MAX, evals, true)),
                None => Err(Error::BudgetExceeded {
                    spent: evals + cost,
                    budget: spec.max_evals,
                }),
            };
        }
        let v = integrate_once(f, &rows)?;
        evals += cost;
        if let Some(p) = prev {
            let err = (v - p).norm();
            if err <= 0.5 * spec.target_eps * v.norm().max(1.0) {
                return Ok((v, err, evals, false));
            }
            if d >= 64 {
                return Ok((v, err, evals, true));
            }
        }
        prev = Some(v);
        d *= 2;
    }
}

/// Constant term a_0(y) = int_{-1/2}^{1/2} f(x + iy) dx by the midpoint rule
/// with doubling; exact once the node count passes twice the mode count.
pub fn constant_term<F: RowIntegrand + ?Sized>(f: &F, y: f64, eps: f64) -> Result<Complex64> {
    Ok(constant_term_counted(f, y, eps)?.0)
}

pub(crate) fn constant_term_counted<F: RowIntegrand + ?Sized>(
    f: &F,
    y: f64,
    eps: f64,
) -> Result<(Complex64, usize)> {
    let mut m = 64usize;
    let mut prev: Option<Complex64> = None;
    let mut evals = 0usize;
    loop {
        let xs: Vec<f64> = (0..m)
            .map(|j| -0.5 + (j as f64 + 0.5) / m as f64)
            .collect();
        let vals = f.eval_row(y, &xs)?;
        evals += m;
        let v = vals.iter().sum::<Complex64>() / m as f64;
        if let Some(p) = prev {
            if (v - p).norm() <= eps.max(1e-13 * v.norm().max(1.0)) {
                return Ok((v, evals));
            }
        }
        if m >= 16384 {
            return Err(Error::Invalid(format!(
                "constant-term quadrature at y = {y} did not converge"
            )));
        }
        prev = Some(v);
        m *= 2;
    }
}

/// Tail of int_Y^infty a0(y) / y^2 dy modeled from the measured decay of a0,
/// plus a bound on the exponentially small non-constant modes. Returns
/// (tail value, error contribution, evaluations).
pub(crate) fn tail_from_constant_terms(
    a: [Complex64; 3],
    y1: f64,
    target_eps: f64,
    scale: f64,
) -> Result<(Complex64, f64)> {
    let tiny = 1e-3 * target_eps * (1.0 + scale);
    if a[0].norm() < tiny {
        return Ok((Complex64::new(0.0, 0.0), a[0].norm() / y1));
    }
    if a[1].norm() < tiny || a[2].norm() < tiny {
        // No stable exponent estimate; keep the crude bound.
        return Ok((Complex64::new(0.0, 0.0), 2.0 * a[0].norm() / y1));
    }
    let ratio = 1.25f64.ln(); // heights are Y, 0.8 Y, 0.64 Y
    let p1 = (a[0].norm() / a[1].norm()).ln() / ratio;
    let p2 = (a[1].norm() / a[2].norm()).ln() / ratio;
    if p1.max(p2) >= 0.9 {
        return Err(Error::ProfileMismatch {
            measured: p1.max(p2),
            limit: 0.9,
        });
    }
    // a0(y) ~ a0(Y) (y/Y)^p gives int_Y^infty a0/y^2 = a0(Y) / ((1-p) Y);
    // the spread of the two exponent estimates prices the model error.
    let t1 = a[0] / ((1.0 - p1) * y1);
    let t2 = a[0] / ((1.0 - p2) * y1);
    Ok((t1, (t1 - t2).norm() + 0.05 * t1.norm()))
}

/// Largest deviation of a row from its constant term: bounds the neglected
/// non-constant modes above the truncation height.
pub(crate) fn oscillatory_remainder<F: RowIntegrand + ?Sized>(
    f: &F,
    y: f64,
    a0: Complex64,
) -> Result<(f64, usize)> {
    let m = 17usize;
    let xs: Vec<f64> = (0..m).map(|j| -0.5 + j as f64 / (m - 1) as f64).collect();
    let vals = f.eval_row(y, &xs)?;
    let dev = vals
        .iter()
        .map(|v| (v - a0).norm())
        .fold(0.0f64, f64::max);
    Ok((dev / (2.0 * std::f64::consts::PI * y * y), m))
}

/// Integral of f over the full modular surface, as the truncated-domain
/// integral plus a modeled tail. The integrand must be bounded with a
/// constant term growing slower than y^{0.9} (renormalized integrands go
/// through the regularized routines instead).
pub fn integrate_domain<F: RowIntegrand + ?Sized>(
    f: &F,
    spec: &QuadratureSpec,
) -> Result<DomainIntegral> {
    let (v, mut err, mut evals, budget) = integrate_truncated(f, spec)?;
    let y1 = spec.y_max;
    let ct_eps = 1e-11 * (1.0 + v.norm());
    let mut a = [Complex64::new(0.0, 0.0); 3];
    for (i, &y) in [y1, 0.8 * y1, 0.64 * y1].iter().enumerate() {
        let (ai, n) = constant_term_counted(f, y, ct_eps)?;
        a[i] = ai;
        evals += n;
    }
    let (tail, tail_err) = tail_from_constant_terms(a, y1, spec.target_eps, v.norm())?;
    let (osc_rem, n) = oscillatory_remainder(f, y1, a[0])?;
    evals += n;
    err += tail_err + osc_rem;
    Ok(DomainIntegral {
        value: v + tail,
        error_estimate: err,
        tail,
        evals,
        budget_exceeded: budget,
    })
}
