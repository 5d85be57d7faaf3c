//! Acquisition, validation, caching, and serving of Hecke-Maass eigendata
//! from bundled fixtures and a remote database.

mod cache;
mod fetch;
mod record;

pub use cache::{cache_lookup, cache_root, cache_store, CACHE_ENV};
pub use fetch::{fetch_offline, fetch_remote, query_url, StubTransport, Transport};
pub use record::FormRecord;

use crate::forms::{hecke_validate, MaassForm};
use crate::spectral::SpectralBasis;
use crate::{Error, Result};
use std::path::Path;

/// Why a fixture file did not make it into the basis.
#[derive(Debug, Clone)]
pub struct Rejection {
    pub file: String,
    pub reason: String,
}

/// Load every `*.json` record under `dir` into a validated spectral basis.
/// Each admitted form passes the checksum, the admission rules, and Hecke
/// validation; failures are returned as rejections rather than aborting the
/// load. An empty directory yields the empty basis.
pub fn load_fixtures(dir: &Path) -> Result<(SpectralBasis, Vec<Rejection>)> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Invalid(format!("fixture dir {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut forms: Vec<MaassForm> = Vec::new();
    let mut rejections = Vec::new();
    for path in paths {
        let file = path.display().to_string();
        match load_one(&path) {
            Ok(form) => forms.push(form),
            Err(e) => rejections.push(Rejection {
                file,
                reason: e.to_string(),
            }),
        }
    }
    let height = forms.iter().map(|f| f.t_j).fold(0.0f64, f64::max);
    let basis = SpectralBasis::new(forms, height, 0.25)?;
    Ok((basis, rejections))
}

fn load_one(path: &Path) -> Result<MaassForm> {
    let record = FormRecord::load(path)?;
    let (form, _rescaled) = record.to_form()?;
    let report = hecke_validate(&form);
    if !report.flagged.is_empty() {
        let (m, n, r) = report.flagged[0];
        return Err(Error::Invalid(format!(
            "Hecke validation failed: {} flagged pairs, worst ({m},{n}) residual {r:.3e}",
            report.flagged.len()
        )));
    }
    if report.rankin_selberg_max > 4.0 {
        return Err(Error::ProfileMismatch {
            measured: report.rankin_selberg_max,
            limit: 4.0,
        });
    }
    Ok(form)
}
