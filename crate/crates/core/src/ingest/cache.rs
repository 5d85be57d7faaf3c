//! Content-addressed record cache: one file per checksum under a root taken
//! from the AUTOMORPH_CACHE environment variable, plus a query index so
//! repeated fetches of the same range never touch the network. Writes go
//! through a temp file and an atomic rename, so readers never see partial
//! content and concurrent writers of the same record race benignly.

use super::record::FormRecord;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "AUTOMORPH_CACHE";

pub fn cache_root() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => std::env::temp_dir().join("automorph-cache"),
    }
}

fn record_path(root: &Path, checksum: &str) -> PathBuf {
    root.join(format!("{checksum}.json"))
}

fn index_path(root: &Path) -> PathBuf {
    root.join("index.json")
}

fn atomic_write(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Invalid(format!("cache dir {}: {e}", dir.display())))?;
    let tmp = dir.join(format!(
        ".tmp-{}-{:x}",
        std::process::id(),
        path.file_name().map_or(0u64, |n| {
            use std::hash::{Hash, Hasher};
            let mut h = std::collections::hash_map::DefaultHasher::new();
            n.hash(&mut h);
            h.finish()
        })
    ));
    std::fs::write(&tmp, content)
        .map_err(|e| Error::Invalid(format!("cache write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::Invalid(format!("cache rename {}: {e}", path.display())))
}

/// Persist a record at its content address. Idempotent.
pub fn cache_store(root: &Path, record: &FormRecord) -> Result<PathBuf> {
    let path = record_path(root, &record.checksum);
    if !path.exists() {
        atomic_write(&path, &record.to_canonical_json())?;
    }
    Ok(path)
}

/// Load a record by checksum, verifying content.
pub fn cache_lookup(root: &Path, checksum: &str) -> Option<FormRecord> {
    FormRecord::load(&record_path(root, checksum)).ok()
}

fn load_index(root: &Path) -> BTreeMap<String, Vec<String>> {
    std::fs::read_to_string(index_path(root))
        .ok()
        .and_then(|t| serde_json::from_str(&t).ok())
        .unwrap_or_default()
}

pub fn query_key(t_range: (f64, f64), coeff_count: usize) -> String {
    format!("{:.6}..{:.6}#{coeff_count}", t_range.0, t_range.1)
}

/// Checksums previously stored for a query, if the query was completed.
pub fn index_lookup(root: &Path, key: &str) -> Option<Vec<String>> {
    load_index(root).get(key).cloned()
}

/// Record a completed query -> checksums mapping.
pub fn index_store(root: &Path, key: &str, checksums: Vec<String>) -> Result<()> {
    let mut index = load_index(root);
    index.insert(key.to_string(), checksums);
    let body = serde_json::to_string_pretty(&index).expect("index serializes");
    atomic_write(&index_path(root), &body)
}
