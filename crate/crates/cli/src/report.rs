//! Machine-readable verification reports (`mub-report/1`).

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "mub-report/1";

/// One verification result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    /// Short tag naming the identity being checked, e.g. `Thm3.11`.
    pub anchor: String,
    #[serde(serialize_with = "serialize_inputs")]
    pub inputs: Vec<(String, i64)>,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn serialize_inputs<S: serde::Serializer>(
    inputs: &[(String, i64)],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let map: Map<String, Value> = inputs
        .iter()
        .map(|(k, v)| (k.clone(), Value::from(*v)))
        .collect();
    map.serialize(serializer)
}

impl CheckRecord {
    pub fn new(check: &str, anchor: &str, inputs: &[(&str, i64)], deviation: f64, tolerance: f64) -> Self {
        CheckRecord {
            check: check.to_string(),
            anchor: anchor.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            deviation,
            tolerance,
            passed: deviation <= tolerance,
            elapsed_us: None,
            detail: None,
        }
    }

    pub fn from_check(check: &str, anchor: &str, inputs: &[(&str, i64)], c: mub_core::Check) -> Self {
        let mut rec = Self::new(check, anchor, inputs, c.deviation, c.tolerance);
        rec.passed = c.passed;
        rec
    }

    pub fn with_passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_elapsed(mut self, elapsed: std::time::Duration) -> Self {
        self.elapsed_us = Some(elapsed.as_micros() as u64);
        self
    }

    pub fn inputs_label(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.check
            .cmp(&other.check)
            .then_with(|| {
                let a = self.inputs.iter().map(|(_, v)| *v);
                let b = other.inputs.iter().map(|(_, v)| *v);
                a.cmp(b)
            })
            .then_with(|| self.anchor.cmp(&other.anchor))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<f64>,
}

impl ReportDocument {
    /// Builds a report; records are sorted by check name and inputs so the
    /// output does not depend on evaluation order.
    pub fn new(config: Value, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(CheckRecord::sort_key_cmp);
        let passed = records.iter().filter(|r| r.passed).count();
        ReportDocument {
            schema: SCHEMA,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            config,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
            total_ms: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Drops every wall-clock field.
    pub fn strip_timings(&mut self) {
        self.total_ms = None;
        for r in &mut self.records {
            r.elapsed_us = None;
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record([
            "check",
            "anchor",
            "inputs",
            "deviation",
            "tolerance",
            "passed",
            "elapsed_us",
            "detail",
        ])?;
        for r in &self.records {
            writer.write_record([
                r.check.clone(),
                r.anchor.clone(),
                r.inputs_label(),
                format!("{:e}", r.deviation),
                format!("{:e}", r.tolerance),
                r.passed.to_string(),
                r.elapsed_us.map(|t| t.to_string()).unwrap_or_default(),
                r.detail.clone().unwrap_or_default(),
            ])?;
        }
        Ok(String::from_utf8(writer.into_inner()?)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = write!(
                out,
                "{} {:<32} {:<12} {:<24} dev={:.3e} tol={:.3e}",
                if r.passed { "PASS" } else { "FAIL" },
                r.check,
                r.anchor,
                r.inputs_label(),
                r.deviation,
                r.tolerance
            );
            if let Some(detail) = &r.detail {
                let _ = write!(out, "  {detail}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "summary: {} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(check: &str, d: i64, dev: f64) -> CheckRecord {
        CheckRecord::new(check, "X", &[("d", d)], dev, 1e-9)
    }

    #[test]
    fn records_sorted_numerically() {
        let doc = ReportDocument::new(
            Value::Null,
            vec![record("b", 10, 0.0), record("a", 3, 0.0), record("b", 9, 1.0)],
        );
        let order: Vec<_> = doc.records.iter().map(|r| (r.check.as_str(), r.inputs[0].1)).collect();
        assert_eq!(order, vec![("a", 3), ("b", 9), ("b", 10)]);
        assert_eq!(doc.summary, Summary { total: 3, passed: 2, failed: 1 });
        assert!(!doc.all_passed());
    }

    #[test]
    fn json_has_schema_and_inputs_object() {
        let doc = ReportDocument::new(Value::Null, vec![record("a", 3, 0.0).with_detail("ok")]);
        let v: Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["records"][0]["inputs"]["d"], 3);
        assert_eq!(v["records"][0]["detail"], "ok");
        assert!(v["records"][0].get("elapsed_us").is_none());
    }

    #[test]
    fn csv_has_header_and_one_row_per_record() {
        let doc = ReportDocument::new(
            Value::Null,
            vec![record("a", 3, 0.0), CheckRecord::new("c", "Y", &[("d", 4), ("k", 1)], 0.5, 1e-9)],
        );
        let csv = doc.to_csv().unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("check,anchor,inputs"));
        assert!(lines[2].starts_with("c,Y,d=4;k=1,"));
        assert!(lines[2].contains(",false,"));
    }
}
