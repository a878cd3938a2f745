//! Machine-readable outcome of one check on one certificate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use weylbraid_core::goodrep::CertificateJson;
use weylbraid_core::GoodRepCertificate;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<u64>,
    #[serde(rename = "Ỹ", default, skip_serializing_if = "Option::is_none")]
    pub y_tilde: Option<u64>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<u64>,
    #[serde(rename = "X̃", default, skip_serializing_if = "Option::is_none")]
    pub x_tilde: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub n: usize,
    pub q: usize,
    pub k: usize,
    pub cert_id: String,
    pub cert: CertificateJson,
    /// The partition a slice report refers to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub counts: Counts,
    pub orbit_count: Option<u64>,
    pub violations: Vec<Violation>,
    /// Points or orbits a check could not be applied to (no rational lift).
    pub skipped: u64,
    pub metrics: BTreeMap<String, u64>,
    pub runtime_ms: Option<u64>,
}

/// `c<class>:<word>`, e.g. `c2:s1s2`; the identity word is `e`.
pub fn cert_id(cert: &GoodRepCertificate) -> String {
    let word = cert.w.word();
    let word = if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{}", i + 1)).collect()
    };
    match cert.class_id {
        Some(c) => format!("c{c}:{word}"),
        None => word,
    }
}

impl Report {
    pub fn new(suite: &str, n: usize, q: usize, k: usize, cert: &GoodRepCertificate) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            n,
            q,
            k,
            cert_id: cert_id(cert),
            cert: cert.to_json(),
            lambda: None,
            counts: Counts::default(),
            orbit_count: None,
            violations: Vec::new(),
            skipped: 0,
            metrics: BTreeMap::new(),
            runtime_ms: None,
        }
    }

    pub fn violation(&mut self, check: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            check: check.to_string(),
            detail: detail.into(),
        });
    }

    pub fn metric(&mut self, key: &str, value: impl TryInto<u64>) {
        self.metrics
            .insert(key.to_string(), value.try_into().unwrap_or(u64::MAX));
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.metrics.get(key).copied()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}
