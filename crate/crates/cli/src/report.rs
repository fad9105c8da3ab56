use std::collections::BTreeMap;
use std::fmt::Write as _;

use khof::khovanov::BigradedRanks;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything a run produced. Two runs with the same arguments and input
/// bytes serialize identically apart from `elapsed_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub results: BTreeMap<String, Value>,
    pub checks: BTreeMap<String, bool>,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: &[u8]) -> RunReport {
        RunReport {
            command,
            input_digest: hex::encode(Sha256::digest(input)),
            results: BTreeMap::new(),
            checks: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("result values serialize");
        self.results.insert(key.to_string(), v);
    }

    pub fn check(&mut self, key: &str, ok: bool) {
        self.checks.insert(key.to_string(), ok);
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}\n", self.command.join(" "));
        for (k, v) in &self.results {
            let shown = match v {
                Value::String(text) => text.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "  {k}: {shown}");
        }
        for (k, ok) in &self.checks {
            let _ = writeln!(s, "  check {k}: {}", if *ok { "pass" } else { "FAIL" });
        }
        let _ = write!(s, "  {} ms", self.elapsed_ms);
        s
    }
}

/// Rank tables flattened to `table,h,q,rank,torsion` rows.
pub fn csv_rows(table: &str, ranks: &BigradedRanks, out: &mut String) {
    for (&(h, q), &r) in &ranks.free {
        let _ = writeln!(out, "{table},{h},{q},{r},");
    }
    for (&(h, q), orders) in &ranks.torsion {
        for o in orders {
            let _ = writeln!(out, "{table},{h},{q},,{o}");
        }
    }
}
