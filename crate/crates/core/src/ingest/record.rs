//! On-disk record of a Hecke-Maass form: one JSON document per form, with
//! numeric payload kept as decimal strings so precision survives round-trip,
//! plus a checksum over the payload.

use crate::forms::{MaassForm, Parity};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Serialized form data plus provenance. `hecke[n-1]` is lambda(n) as a
/// decimal string; `spectral_parameter` must carry at least 12 significant
/// digits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormRecord {
    pub spectral_parameter: String,
    pub parity: Parity,
    pub hecke: Vec<String>,
    pub l1_sym2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_value: Option<f64>,
    pub source: String,
    pub fetch_timestamp: String,
    pub coefficient_count: usize,
    pub checksum: String,
}

fn significant_digits(s: &str) -> usize {
    s.chars().filter(|c| c.is_ascii_digit()).count()
}

impl FormRecord {
    /// Assemble a record, filling in count and checksum.
    pub fn new(
        spectral_parameter: String,
        parity: Parity,
        hecke: Vec<String>,
        l1_sym2: f64,
        central_value: Option<f64>,
        source: String,
        fetch_timestamp: String,
    ) -> Self {
        let mut r = Self {
            spectral_parameter,
            parity,
            hecke,
            l1_sym2,
            central_value,
            source,
            fetch_timestamp,
            coefficient_count: 0,
            checksum: String::new(),
        };
        r.coefficient_count = r.hecke.len();
        r.checksum = r.compute_checksum();
        r
    }

    /// Checksum over the numeric payload (not provenance).
    pub fn compute_checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.spectral_parameter.as_bytes());
        h.update(b"\n");
        h.update(match self.parity {
            Parity::Even => b"even".as_slice(),
            Parity::Odd => b"odd".as_slice(),
        });
        h.update(b"\n");
        for c in &self.hecke {
            h.update(c.as_bytes());
            h.update(b",");
        }
        h.update(b"\n");
        h.update(format!("{:.17e}", self.l1_sym2).as_bytes());
        h.update(b"\n");
        match self.central_value {
            Some(v) => h.update(format!("{v:.17e}").as_bytes()),
            None => h.update(b"none".as_slice()),
        }
        hex::encode(h.finalize())
    }

    pub fn verify_checksum(&self) -> Result<()> {
        let want = self.compute_checksum();
        if self.checksum != want {
            return Err(Error::Invalid(format!(
                "checksum mismatch for {}: recorded {}, payload gives {}",
                self.source, self.checksum, want
            )));
        }
        Ok(())
    }

    /// Canonical serialization; `parse` of this output is byte-stable.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("record parse error: line {}: {e}", e.line())))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_canonical_json())
            .map_err(|e| Error::Invalid(format!("write {}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("read {}: {e}", path.display())))?;
        let r = Self::parse(&text)?;
        r.verify_checksum()?;
        Ok(r)
    }

    /// Decode into evaluable eigendata. Enforces the 12-digit spectral
    /// parameter and 100-coefficient admission rules; detects Hecke vs L^2
    /// coefficient normalization via lambda(1) and rescales when needed,
    /// reporting the decision.
    pub fn to_form(&self) -> Result<(MaassForm, bool)> {
        if significant_digits(&self.spectral_parameter) < 12 {
            return Err(Error::Invalid(format!(
                "spectral parameter {:?} carries fewer than 12 significant digits",
                self.spectral_parameter
            )));
        }
        if self.hecke.len() < 100 || self.coefficient_count != self.hecke.len() {
            return Err(Error::Invalid(format!(
                "coefficient count {} (declared {}) below the admission minimum 100",
                self.hecke.len(),
                self.coefficient_count
            )));
        }
        let t_j: f64 = self
            .spectral_parameter
            .parse()
            .map_err(|e| Error::Invalid(format!("spectral parameter: {e}")))?;
        let mut hecke = Vec::with_capacity(self.hecke.len());
        for (i, c) in self.hecke.iter().enumerate() {
            let v: f64 = c
                .parse()
                .map_err(|e| Error::Invalid(format!("hecke[{i}]: {e}")))?;
            hecke.push(v);
        }
        let lam1 = hecke[0];
        if lam1 == 0.0 || !lam1.is_finite() {
            return Err(Error::Invalid("lambda(1) must be nonzero".into()));
        }
        // arithmetic normalization has lambda(1) = 1; anything else is an
        // overall scaling we divide out
        let rescaled = (lam1 - 1.0).abs() > 1e-9;
        if rescaled {
            for v in &mut hecke {
                *v /= lam1;
            }
        }
        Ok((
            MaassForm {
                t_j,
                parity: self.parity,
                hecke,
                l1_sym2: self.l1_sym2,
                source_id: self.source.clone(),
                scale: 1.0,
                central_value: self.central_value,
            },
            rescaled,
        ))
    }
}
