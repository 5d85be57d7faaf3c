//! Command-line front end: identity-verification suites, moment scans over
//! parameter grids, regime-table exports, eigendata fetching, and CSV/JSON
//! emission for offline plotting.

use automorph::bounds::{w_table, SlackParams};
use automorph::forms::{EisensteinParams, EisensteinSeries, MaassForm, UpperHalfPoint};
use automorph::ingest::{cache_root, fetch_offline, fetch_remote, load_fixtures, Transport};
use automorph::lfunctions::{completed_l, LSeries};
use automorph::quadrature::{
    integrate_domain, regularized_integral_residue, regularized_integral_subtract,
    QuadratureSpec, RenormProfile, TestFunction,
};
use automorph::specfun::xi;
use automorph::spectral::{cubic_moment_direct, joint_moment_eeg, rotation, SpectralBasis};
use automorph::{Complex64, Error};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

const EXIT_SUITE_FAILURE: i32 = 1;
const EXIT_CONFIG_ERROR: i32 = 2;
const EXIT_FIXTURE_ERROR: i32 = 3;

#[derive(Parser)]
#[command(name = "automorph", version, about = "spectral moment experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Run configuration (JSON)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for scans
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Never touch the network
    #[arg(long, global = true)]
    offline: bool,
    /// Evaluate outside the certified gates, labeling results uncertified
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named invariant suite and emit a JSON report
    Verify { suite: String },
    /// Scan the moment quantities over the configured parameter grid (CSV)
    MomentScan,
    /// Export the W(t, t_g) regime classification over a grid (CSV)
    RegimeTable {
        #[arg(long, default_value_t = 10.0)]
        t_min: f64,
        #[arg(long, default_value_t = 1000.0)]
        t_max: f64,
        #[arg(long, default_value_t = 10)]
        t_steps: usize,
        #[arg(long, default_value_t = 5.0)]
        tg_min: f64,
        #[arg(long, default_value_t = 3000.0)]
        tg_max: f64,
        #[arg(long, default_value_t = 30)]
        tg_steps: usize,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 0.01)]
        eps_prime: f64,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
    },
    /// Fetch eigendata records into the local cache
    Fetch {
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 1000)]
        coeffs: usize,
    },
    /// Print fixture census and environment facts
    Info,
}

/// Serialized description of a scan; a run is reproducible from this plus
/// the fixture set.
#[derive(Debug, Serialize, Deserialize)]
struct RunConfig {
    /// "cubic" or "joint"
    scan: String,
    t: Vec<f64>,
    /// joint scans: spectral parameter of the fixture form g (nearest match);
    /// first fixture form when omitted
    #[serde(default)]
    g_t_j: Option<f64>,
    #[serde(default = "default_y_max")]
    y_max: f64,
    #[serde(default = "default_eps")]
    eps: f64,
    #[serde(default = "default_budget")]
    max_evals: usize,
    /// fixture directory; bundled set when omitted
    #[serde(default)]
    fixtures: Option<PathBuf>,
    #[serde(default)]
    seed: u64,
}

fn default_y_max() -> f64 {
    8.0
}
fn default_eps() -> f64 {
    1e-7
}
fn default_budget() -> usize {
    60_000_000
}

fn fixture_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    let local = PathBuf::from("crates/core/fixtures/maass");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/maass")
}

fn load_basis(dir: &Path) -> Result<SpectralBasis, String> {
    let (basis, rejections) = load_fixtures(dir).map_err(|e| e.to_string())?;
    if !rejections.is_empty() {
        let names: Vec<_> = rejections
            .iter()
            .map(|r| format!("{}: {}", r.file, r.reason))
            .collect();
        return Err(format!("rejected fixtures: {}", names.join("; ")));
    }
    Ok(basis)
}

fn emit(out: Option<&Path>, content: &str) -> i32 {
    match out {
        None => {
            print!("{content}");
            0
        }
        Some(p) => match std::fs::write(p, content) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("cannot write {}: {e}", p.display());
                EXIT_CONFIG_ERROR
            }
        },
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        pass,
        detail,
    }
}

fn approx(name: &str, got: f64, want: f64, tol: f64) -> Check {
    check(
        name,
        (got - want).abs() <= tol,
        format!("got {got:.12e}, want {want:.12e} within {tol:.1e}"),
    )
}

fn spec(y_max: f64, eps: f64, osc: f64) -> QuadratureSpec {
    QuadratureSpec::new(y_max, eps, 40_000_000)
        .unwrap()
        .with_oscillation(osc)
}

fn suite_specfun() -> Vec<Check> {
    let mut checks = Vec::new();
    let xi2 = xi(Complex64::new(2.0, 0.0)).unwrap();
    checks.push(approx(
        "xi(2) = pi/6",
        xi2.re,
        std::f64::consts::PI / 6.0,
        1e-12,
    ));
    for &(re, im) in &[(0.3, 4.0), (0.5, 11.0), (1.4, -2.0)] {
        let s = Complex64::new(re, im);
        let a = xi(s).unwrap();
        let b = xi(Complex64::new(1.0, 0.0) - s).unwrap();
        checks.push(check(
            &format!("xi functional equation at {s}"),
            (a - b).norm() <= 1e-10 * (1.0 + a.norm()),
            format!("|xi(s) - xi(1-s)| = {:.3e}", (a - b).norm()),
        ));
    }
    let z2 = automorph::specfun::zeta(Complex64::new(2.0, 0.0)).unwrap();
    checks.push(approx(
        "zeta(2) = pi^2/6",
        z2.re,
        std::f64::consts::PI * std::f64::consts::PI / 6.0,
        1e-12,
    ));
    checks
}

fn suite_forms(dir: &Path) -> Result<Vec<Check>, String> {
    let basis = load_basis(dir)?;
    let forms = basis.forms();
    let mut checks = Vec::new();
    checks.push(check(
        "fixture census",
        forms.len() >= 5,
        format!("{} admitted forms", forms.len()),
    ));
    let first_odd = forms
        .iter()
        .find(|f| f.parity == automorph::forms::Parity::Odd)
        .map_or(0.0, |f| f.t_j);
    let first_even = forms
        .iter()
        .find(|f| f.parity == automorph::forms::Parity::Even)
        .map_or(0.0, |f| f.t_j);
    checks.push(approx("first odd spectral parameter", first_odd, 9.5336952613, 1e-8));
    checks.push(approx("first even spectral parameter", first_even, 13.7797513519, 1e-8));
    for f in forms {
        let report = automorph::forms::hecke_validate(f);
        checks.push(check(
            &format!("Hecke relations at t_j = {:.4}", f.t_j),
            report.passes(),
            format!(
                "max residual {:.3e}, RS max {:.3}",
                report.max_residual, report.rankin_selberg_max
            ),
        ));
    }
    Ok(checks)
}

fn suite_quadrature() -> Vec<Check> {
    let mut checks = Vec::new();
    let s = spec(4.0, 1e-8, 0.0);
    let vol = regularized_integral_residue(
        &|_y: f64, xs: &[f64]| Ok(vec![Complex64::new(1.0, 0.0); xs.len()]),
        &RenormProfile::empty(),
        &s,
    )
    .unwrap();
    checks.push(approx(
        "fundamental domain volume",
        vol.value.re,
        std::f64::consts::PI / 3.0,
        1e-6,
    ));
    // hyperbolic invariance: the bump norm depends on the radius only
    let norm2 = |center: UpperHalfPoint| {
        let psi = TestFunction::new(center, 0.2).unwrap();
        integrate_domain(
            &|y: f64, xs: &[f64]| {
                Ok(psi.eval_row(y, xs).iter().map(|v| v * v).collect())
            },
            &s,
        )
        .unwrap()
        .value
        .re
    };
    let a = norm2(UpperHalfPoint::new(0.0, 1.5));
    let b = norm2(UpperHalfPoint::new(0.2, 2.2));
    checks.push(check(
        "bump norm center-invariance",
        (a - b).abs() <= 1e-8 * a.abs(),
        format!("{a:.12e} vs {b:.12e}"),
    ));
    checks
}

fn suite_lfunctions(dir: &Path) -> Result<Vec<Check>, String> {
    let mut checks = Vec::new();
    let z = LSeries::zeta(200_000);
    let v = automorph::lfunctions::afe_central(&z, Complex64::new(0.5, 0.0), 1e-8).unwrap();
    checks.push(approx("zeta(1/2)", v.re, -1.4603545088, 1e-6));
    let basis = load_basis(dir)?;
    let form = &basis.forms()[0];
    let l = LSeries::gl2(form).map_err(|e| e.to_string())?;
    let gamma = l.gamma_factor().clone();
    let s = Complex64::new(0.5, 3.0);
    let up = completed_l(&l, &gamma, s).unwrap();
    let down = completed_l(&l, &gamma, Complex64::new(0.5, -3.0)).unwrap();
    let omega = l.root_number();
    checks.push(check(
        "fixture functional equation",
        (up - omega * down).norm() <= 1e-4 * up.norm(),
        format!("residual {:.3e}", (up - omega * down).norm() / up.norm()),
    ));
    Ok(checks)
}

fn suite_identities() -> Vec<Check> {
    let mut checks = Vec::new();
    // Zagier triple product against its closed form
    let (t1, t2, t3) = (2.0, 3.0, 5.0);
    let series: Vec<EisensteinSeries> = [t1, t2, t3]
        .iter()
        .map(|&t| EisensteinSeries::new(EisensteinParams::critical_line(t).unwrap()).unwrap())
        .collect();
    let params: Vec<Complex64> = [t1, t2, t3].iter().map(|&t| Complex64::new(0.5, t)).collect();
    let profile = RenormProfile::for_eisenstein_product(&params).unwrap();
    let rows = |y: f64, xs: &[f64]| {
        let mut acc = vec![Complex64::new(1.0, 0.0); xs.len()];
        for s in &series {
            let row = s.eval_row(y, xs, 1e-10)?;
            for (a, r) in acc.iter_mut().zip(&row) {
                *a *= r;
            }
        }
        Ok(acc)
    };
    let r = regularized_integral_residue(&rows, &profile, &spec(4.0, 1e-8, t1 + t2 + t3)).unwrap();
    let x = |re: f64, im: f64| xi(Complex64::new(re, im)).unwrap();
    let exact = x(0.5, t1 + t2 + t3) * x(0.5, t1 - t2 + t3) * x(0.5, t1 + t2 - t3)
        * x(0.5, t1 - t2 - t3)
        / (x(1.0, 2.0 * t1) * x(1.0, 2.0 * t2) * x(1.0, 2.0 * t3));
    checks.push(check(
        "Eisenstein triple product closed form",
        (r.value - exact).norm() <= 1e-4 * exact.norm(),
        format!("rel {:.3e}", (r.value - exact).norm() / exact.norm()),
    ));
    // both regularization definitions on a pair product
    let (a, b) = (Complex64::new(0.8, 0.0), Complex64::new(0.7, 0.0));
    let ea = EisensteinSeries::new(EisensteinParams::general(a).unwrap()).unwrap();
    let eb = EisensteinSeries::new(EisensteinParams::general(b).unwrap()).unwrap();
    let profile = RenormProfile::for_eisenstein_product(&[a, b]).unwrap();
    let rows = |y: f64, xs: &[f64]| {
        let ra = ea.eval_row(y, xs, 1e-10)?;
        let rb = eb.eval_row(y, xs, 1e-10)?;
        Ok(ra.iter().zip(&rb).map(|(u, v)| u * v).collect())
    };
    let s = spec(4.0, 1e-8, 0.0);
    let r1 = regularized_integral_residue(&rows, &profile, &s).unwrap();
    let r2 = regularized_integral_subtract(&rows, &profile, &s).unwrap();
    checks.push(check(
        "regularization definitions agree",
        (r1.value - r2.value).norm() <= 1e-4 && r1.value.norm() <= 1e-4,
        format!(
            "residue {:.3e}, subtract {:.3e}",
            r1.value.norm(),
            r2.value.norm()
        ),
    ));
    checks
}

fn cmd_verify(cli: &Cli, suite: &str) -> i32 {
    let dir = fixture_dir(None);
    let checks = match suite {
        "specfun" => Ok(suite_specfun()),
        "forms" => suite_forms(&dir),
        "quadrature" => Ok(suite_quadrature()),
        "lfunctions" => suite_lfunctions(&dir),
        "identities" => Ok(suite_identities()),
        other => {
            eprintln!("unknown suite {other}; expected specfun | forms | quadrature | lfunctions | identities");
            return EXIT_CONFIG_ERROR;
        }
    };
    let checks = match checks {
        Ok(c) => c,
        Err(e) => {
            eprintln!("fixture error: {e}");
            return EXIT_FIXTURE_ERROR;
        }
    };
    let passed = checks.iter().all(|c| c.pass);
    let report = serde_json::json!({
        "suite": suite,
        "passed": passed,
        "checks": checks,
    });
    let code = emit(
        cli.out.as_deref(),
        &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
    );
    if code != 0 {
        return code;
    }
    if passed {
        0
    } else {
        EXIT_SUITE_FAILURE
    }
}

const T_GATE: f64 = 30.0;

fn wide_bump() -> TestFunction {
    TestFunction::new(UpperHalfPoint::new(0.0, 1.40), 0.33).unwrap()
}

/// Direct cubic moment without the oscillation gate, for --force rows.
fn cubic_direct_ungated(
    psi: &TestFunction,
    t: f64,
    s: &QuadratureSpec,
) -> automorph::Result<(Complex64, f64)> {
    let series = EisensteinSeries::new(EisensteinParams::critical_line(t)?)?;
    let c = rotation(t)?;
    let rows = |y: f64, xs: &[f64]| {
        let base = psi.eval_row(y, xs);
        if base.iter().all(|v| v.norm() == 0.0) {
            return Ok(base);
        }
        let e = series.eval_row(y, xs, 1e-11)?;
        Ok(base
            .iter()
            .zip(e)
            .map(|(b, e)| {
                let v = (c * e).re;
                b * v * v * v
            })
            .collect())
    };
    let out = integrate_domain(&rows, &s.with_oscillation(3.0 * t.abs()))?;
    Ok((out.value, out.error_estimate))
}

fn joint_ungated(
    psi: &TestFunction,
    t: f64,
    g: &MaassForm,
    s: &QuadratureSpec,
) -> automorph::Result<(Complex64, f64)> {
    let series = EisensteinSeries::new(EisensteinParams::critical_line(t)?)?;
    let c = rotation(t)?;
    let rows = |y: f64, xs: &[f64]| {
        let base = psi.eval_row(y, xs);
        if base.iter().all(|v| v.norm() == 0.0) {
            return Ok(base);
        }
        let e = series.eval_row(y, xs, 1e-11)?;
        let gv = g.eval_row(y, xs, 1e-12)?;
        Ok(base
            .iter()
            .zip(e)
            .zip(gv)
            .map(|((b, e), gv)| {
                let v = (c * e).re;
                b * v * v * gv
            })
            .collect())
    };
    let out = integrate_domain(&rows, &s.with_oscillation(2.0 * t.abs() + g.t_j))?;
    Ok((out.value, out.error_estimate))
}

fn scan_row(
    config: &RunConfig,
    g: Option<&MaassForm>,
    force: bool,
    t: f64,
) -> (String, String) {
    let psi = wide_bump();
    let s = QuadratureSpec::new(config.y_max, config.eps, config.max_evals).unwrap();
    let start = Instant::now();
    let gated = t.abs() > T_GATE;
    let outcome = if !gated {
        match g {
            None => cubic_moment_direct(&psi, t, &s).map(|r| (r.value, r.error_estimate)),
            Some(g) => joint_moment_eeg(&psi, t, g, &s).map(|r| (r.value, r.error_estimate)),
        }
    } else if force {
        match g {
            None => cubic_direct_ungated(&psi, t, &s),
            Some(g) => joint_ungated(&psi, t, g, &s),
        }
    } else {
        Err(Error::OutOfRegime(format!("|t| > {T_GATE}")))
    };
    let ms = start.elapsed().as_millis();
    let status = if gated && force {
        "uncertified"
    } else if gated {
        "gated"
    } else {
        "certified"
    };
    match outcome {
        Ok((v, err)) => {
            let mut row = format!("{t},{status},{},{},{err:e},{ms}", v.re, v.im);
            if g.is_some() {
                row.push_str(&format!(",{}", v.re / (2.0 * t.abs().max(2.0).ln())));
            }
            (row, String::new())
        }
        Err(e) => {
            let cols = if g.is_some() { ",,,," } else { ",,," };
            (format!("{t},error{cols}{ms}"), e.to_string())
        }
    }
}

fn cmd_moment_scan(cli: &Cli) -> i32 {
    let Some(path) = cli.config.as_deref() else {
        eprintln!("moment-scan requires --config");
        return EXIT_CONFIG_ERROR;
    };
    let config: RunConfig = match std::fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
    {
        Ok(c) => c,
        Err(e) => {
            eprintln!("bad config {}: {e}", path.display());
            return EXIT_CONFIG_ERROR;
        }
    };
    let g_form = match config.scan.as_str() {
        "cubic" => None,
        "joint" => {
            let dir = fixture_dir(config.fixtures.as_deref());
            let basis = match load_basis(&dir) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("fixture error: {e}");
                    return EXIT_FIXTURE_ERROR;
                }
            };
            if basis.forms().is_empty() {
                eprintln!("fixture error: no admitted forms");
                return EXIT_FIXTURE_ERROR;
            }
            let form = match config.g_t_j {
                None => basis.forms()[0].clone(),
                Some(target) => basis
                    .forms()
                    .iter()
                    .min_by(|a, b| {
                        (a.t_j - target).abs().total_cmp(&(b.t_j - target).abs())
                    })
                    .unwrap()
                    .clone(),
            };
            Some(form)
        }
        other => {
            eprintln!("unknown scan kind {other}; expected cubic | joint");
            return EXIT_CONFIG_ERROR;
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let header = if g_form.is_some() {
        "t,status,re,im,error,runtime_ms,normalized"
    } else {
        "t,status,re,im,error,runtime_ms"
    };
    use rayon::prelude::*;
    let rows: Vec<(String, String)> = config
        .t
        .par_iter()
        .map(|&t| scan_row(&config, g_form.as_ref(), cli.force, t))
        .collect();
    let mut csv = format!("{header}\n");
    for (row, err) in &rows {
        csv.push_str(row);
        csv.push('\n');
        if !err.is_empty() {
            eprintln!("row error: {err}");
        }
    }
    emit(cli.out.as_deref(), &csv)
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_regime_table(
    cli: &Cli,
    t_range: (f64, f64, usize),
    tg_range: (f64, f64, usize),
    p: SlackParams,
) -> i32 {
    let mut csv = String::from("t,t_g,regime,label,bound,log_bound\n");
    for &t in &grid(t_range.0, t_range.1, t_range.2) {
        for &t_g in &grid(tg_range.0, tg_range.1, tg_range.2) {
            match w_table(t, t_g, &p) {
                Ok(r) => csv.push_str(&format!(
                    "{t},{t_g},{},{},{:e},{}\n",
                    r.regime, r.label, r.bound, r.log_bound
                )),
                Err(Error::UncoveredRange(_)) => {
                    csv.push_str(&format!("{t},{t_g},uncovered,,,\n"))
                }
                Err(e) => {
                    eprintln!("regime table error at ({t}, {t_g}): {e}");
                    return EXIT_CONFIG_ERROR;
                }
            }
        }
    }
    emit(cli.out.as_deref(), &csv)
}

struct HttpTransport;

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> automorph::Result<String> {
        let resp = reqwest::blocking::get(url).map_err(|e| Error::Network(e.to_string()))?;
        if !resp.status().is_success() {
            return Err(Error::Network(format!("HTTP {} for {url}", resp.status())));
        }
        resp.text().map_err(|e| Error::Network(e.to_string()))
    }
}

fn cmd_fetch(cli: &Cli, t_range: (f64, f64), coeffs: usize) -> i32 {
    let root = cache_root();
    let result = if cli.offline {
        fetch_offline(&root, t_range, coeffs)
    } else {
        fetch_remote(&HttpTransport, &root, t_range, coeffs)
    };
    match result {
        Ok(records) => {
            let summary: Vec<_> = records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "t_j": r.spectral_parameter,
                        "coefficients": r.coefficient_count,
                        "checksum": r.checksum,
                    })
                })
                .collect();
            let report = serde_json::json!({
                "range": [t_range.0, t_range.1],
                "count": records.len(),
                "cache_root": root.display().to_string(),
                "records": summary,
            });
            emit(
                cli.out.as_deref(),
                &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
            )
        }
        Err(e) => {
            eprintln!("fetch failed: {e}");
            EXIT_FIXTURE_ERROR
        }
    }
}

fn cmd_info(cli: &Cli) -> i32 {
    let dir = fixture_dir(None);
    let (census, rejected) = match load_fixtures(&dir) {
        Ok((basis, rejections)) => {
            let forms: Vec<_> = basis
                .forms()
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "t_j": f.t_j,
                        "parity": format!("{:?}", f.parity),
                        "coefficients": f.hecke.len(),
                        "has_central_value": f.central_value.is_some(),
                    })
                })
                .collect();
            (forms, rejections.len())
        }
        Err(_) => (Vec::new(), 0),
    };
    let report = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "fixture_dir": dir.display().to_string(),
        "forms": census,
        "rejected": rejected,
        "cache_root": cache_root().display().to_string(),
        "gates": { "quadrature_t": T_GATE, "gamma_regime": 200.0 },
    });
    emit(
        cli.out.as_deref(),
        &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
    )
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::Verify { suite } => cmd_verify(&cli, &suite.clone()),
        Cmd::MomentScan => cmd_moment_scan(&cli),
        Cmd::RegimeTable {
            t_min,
            t_max,
            t_steps,
            tg_min,
            tg_max,
            tg_steps,
            eps,
            eps_prime,
            eta,
            delta,
        } => cmd_regime_table(
            &cli,
            (*t_min, *t_max, *t_steps),
            (*tg_min, *tg_max, *tg_steps),
            SlackParams {
                eps: *eps,
                eps_prime: *eps_prime,
                eta: *eta,
                delta: *delta,
            },
        ),
        Cmd::Fetch {
            t_min,
            t_max,
            coeffs,
        } => cmd_fetch(&cli, (*t_min, *t_max), *coeffs),
        Cmd::Info => cmd_info(&cli),
    };
    std::process::exit(code);
}
