//! Versioned run reports: a header echoing the run configuration and the
//! command that reproduces it, the verdict, values, certificate and result.
//!
//! Text form, one `key: value` per line:
//!
//! ```text
//! trigeom-report: 1
//! operation: delta
//! command: trigeom delta flag.json
//! n: 6
//! ...
//! holds: true
//! value.delta: 16
//! ```

use crate::config::Config;
use crate::verdict::Certificate;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub operation: String,
    pub command: String,
    pub n: u32,
    pub config: Config,
    pub seed: u64,
    /// `canonical` or the policy file given.
    pub policy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub values: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

impl Report {
    pub fn new(operation: &str, command: String, n: u32, config: &Config, seed: u64, policy: &str) -> Report {
        Report {
            version: REPORT_VERSION,
            operation: operation.to_string(),
            command,
            n,
            config: config.clone(),
            seed,
            policy: policy.to_string(),
            holds: None,
            values: BTreeMap::new(),
            certificate: None,
            result: None,
        }
    }

    pub fn value(&mut self, key: &str, v: i64) -> &mut Self {
        self.values.insert(key.to_string(), v);
        self
    }

    pub fn result(&mut self, v: impl Serialize) -> &mut Self {
        self.result = Some(serde_json::to_value(v).expect("results always serialize"));
        self
    }

    pub fn to_text(&self) -> String {
        let b = &self.config.budgets;
        let mut s = String::new();
        let _ = writeln!(s, "trigeom-report: {}", self.version);
        let _ = writeln!(s, "operation: {}", self.operation);
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "mode: {}", mode_name(self.config.mode));
        let _ = writeln!(s, "dual6b: {}", self.config.dual6b);
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "policy: {}", self.policy);
        let _ = writeln!(
            s,
            "budgets: max_free_bits={},oracle_cap={},max_subsets={},max_extension={},max_pair_size={},packing_nodes={}",
            b.max_free_bits, b.oracle_cap, b.max_subsets, b.max_extension, b.max_pair_size, b.packing_nodes
        );
        if let Some(h) = self.holds {
            let _ = writeln!(s, "holds: {h}");
        }
        for (k, v) in &self.values {
            let _ = writeln!(s, "value.{k}: {v}");
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(s, "certificate: {}", serde_json::to_string(c).expect("certificates serialize"));
        }
        if let Some(r) = &self.result {
            let _ = writeln!(s, "result: {}", serde_json::to_string(r).expect("json values serialize"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

pub fn mode_name(m: crate::config::StrongnessMode) -> &'static str {
    match m {
        crate::config::StrongnessMode::LClosed => "lclosed",
        crate::config::StrongnessMode::Literal => "literal",
    }
}

/// Parse the `key: value` lines of a text report (later keys win).
pub fn parse_text(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_of_header() {
        let mut r = Report::new("delta", "trigeom delta g.json".into(), 6, &Config::default(), 0, "canonical");
        r.holds = Some(true);
        r.value("delta", 16);
        let kv = parse_text(&r.to_text());
        assert_eq!(kv["trigeom-report"], "1");
        assert_eq!(kv["value.delta"], "16");
        assert_eq!(kv["mode"], "lclosed");
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
