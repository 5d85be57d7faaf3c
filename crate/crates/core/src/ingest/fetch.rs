//! Remote acquisition of Maass eigendata. The live endpoint is an HTTPS GET
//! against the LMFDB API; tests and offline runs swap in a transport stub.
//! Every fetched record is persisted to the content-addressed cache before
//! being returned, and a query index makes repeats cache hits.

use super::cache;
use super::record::FormRecord;
use crate::forms::Parity;
use crate::{Error, Result};
use serde::Deserialize;
use std::path::Path;

/// Abstract GET; the only thing the fetcher needs from the network.
pub trait Transport {
    fn get(&self, url: &str) -> Result<String>;
}

/// Query URL for Maass forms with spectral parameter in a range.
pub fn query_url(t_range: (f64, f64), coeff_count: usize) -> String {
    format!(
        "https://www.lmfdb.org/api/maass_forms/?spectral_parameter=ge{:.6}le{:.6}&coefficients={coeff_count}&_format=json",
        t_range.0, t_range.1
    )
}

/// Remote payload item; required fields missing in the wire JSON surface as
/// a schema-drift error, not a silent default.
#[derive(Deserialize)]
struct RemoteForm {
    spectral_parameter: String,
    parity: Parity,
    hecke: Vec<String>,
    l1_sym2: f64,
    #[serde(default)]
    central_value: Option<f64>,
}

#[derive(Deserialize)]
struct RemotePayload {
    data: Vec<RemoteForm>,
}

fn timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    format!("unix:{secs}")
}

/// Fetch all forms with spectral parameter in `t_range`, requesting
/// `coeff_count` coefficients each. Records are cached under `cache_root`
/// before being returned; a repeated call with the same arguments is served
/// entirely from the cache. Network failures leave the cache untouched.
pub fn fetch_remote(
    transport: &dyn Transport,
    cache_root: &Path,
    t_range: (f64, f64),
    coeff_count: usize,
) -> Result<Vec<FormRecord>> {
    if !(t_range.0 <= t_range.1) {
        return Err(Error::Invalid(format!(
            "empty spectral range {:?}",
            t_range
        )));
    }
    let key = cache::query_key(t_range, coeff_count);
    if let Some(sums) = cache::index_lookup(cache_root, &key) {
        let mut out = Vec::with_capacity(sums.len());
        let mut complete = true;
        for sum in &sums {
            match cache::cache_lookup(cache_root, sum) {
                Some(r) => out.push(r),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return Ok(out);
        }
    }
    let url = query_url(t_range, coeff_count);
    let body = transport.get(&url)?;
    let payload: RemotePayload = serde_json::from_str(&body)
        .map_err(|e| Error::Invalid(format!("remote schema drift at {url}: {e}")))?;
    let when = timestamp();
    let mut out = Vec::with_capacity(payload.data.len());
    let mut sums = Vec::with_capacity(payload.data.len());
    for rf in payload.data {
        let record = FormRecord::new(
            rf.spectral_parameter,
            rf.parity,
            rf.hecke,
            rf.l1_sym2,
            rf.central_value,
            url.clone(),
            when.clone(),
        );
        cache::cache_store(cache_root, &record)?;
        sums.push(record.checksum.clone());
        out.push(record);
    }
    cache::index_store(cache_root, &key, sums)?;
    Ok(out)
}

/// Serve any previously fetched range from the cache without a transport;
/// errors if the range was never fetched.
pub fn fetch_offline(
    cache_root: &Path,
    t_range: (f64, f64),
    coeff_count: usize,
) -> Result<Vec<FormRecord>> {
    struct NoNetwork;
    impl Transport for NoNetwork {
        fn get(&self, url: &str) -> Result<String> {
            Err(Error::Network(format!(
                "offline mode: refusing GET {url} (range not in cache)"
            )))
        }
    }
    fetch_remote(&NoNetwork, cache_root, t_range, coeff_count)
}

/// Transport stub backed by a set of records; stands in for the live API in
/// tests and counts how often the wire is touched.
pub struct StubTransport {
    records: Vec<FormRecord>,
    calls: std::cell::Cell<usize>,
    fail: bool,
}

impl StubTransport {
    pub fn new(records: Vec<FormRecord>) -> Self {
        Self {
            records,
            calls: std::cell::Cell::new(0),
            fail: false,
        }
    }

    /// A stub that simulates an unreachable host.
    pub fn unreachable() -> Self {
        Self {
            records: Vec::new(),
            calls: std::cell::Cell::new(0),
            fail: true,
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.get()
    }
}

impl Transport for StubTransport {
    fn get(&self, url: &str) -> Result<String> {
        self.calls.set(self.calls.get() + 1);
        if self.fail {
            return Err(Error::Network(format!("connection refused: {url}")));
        }
        // extract the requested range from the query string
        let range = url
            .split("spectral_parameter=ge")
            .nth(1)
            .and_then(|s| s.split('&').next())
            .and_then(|s| {
                let (lo, hi) = s.split_once("le")?;
                Some((lo.parse::<f64>().ok()?, hi.parse::<f64>().ok()?))
            })
            .ok_or_else(|| Error::Invalid(format!("stub cannot parse {url}")))?;
        let items: Vec<String> = self
            .records
            .iter()
            .filter(|r| {
                r.spectral_parameter
                    .parse::<f64>()
                    .map(|t| t >= range.0 && t <= range.1)
                    .unwrap_or(false)
            })
            .map(|r| {
                let central = match r.central_value {
                    Some(v) => format!(",\"central_value\":{v}"),
                    None => String::new(),
                };
                format!(
                    "{{\"spectral_parameter\":{},\"parity\":{},\"hecke\":{},\"l1_sym2\":{}{central}}}",
                    serde_json::to_string(&r.spectral_parameter).unwrap(),
                    serde_json::to_string(&r.parity).unwrap(),
                    serde_json::to_string(&r.hecke).unwrap(),
                    r.l1_sym2
                )
            })
            .collect();
        Ok(format!("{{\"data\":[{}]}}", items.join(",")))
    }
}
