//! Analysis reports and their canonical serialization.
//!
//! Canonical JSON has a fixed key order and fixed number formatting (fog
//! index and percentages to 2 decimals, ratios to 4), so identical analyses
//! serialize to identical bytes. Timestamps live only in [`Envelope`].

use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::ruleset::{Finding, RuleId, Status};
use crate::textmetrics::TextStats;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Compliant,
    NotCompliant,
    Indeterminate,
}

impl Verdict {
    /// Compliant iff GDPR1-GDPR6 are all satisfied. Guideline findings are
    /// ignored.
    pub fn from_findings(findings: &[Finding]) -> Verdict {
        let statuses: Vec<Status> = RuleId::GDPR
            .iter()
            .map(|id| {
                findings
                    .iter()
                    .find(|f| f.rule_id == *id)
                    .map_or(Status::Indeterminate, |f| f.status)
            })
            .collect();
        if statuses.iter().all(|s| *s == Status::Satisfied) {
            Verdict::Compliant
        } else if statuses.contains(&Status::NotSatisfied) {
            Verdict::NotCompliant
        } else {
            Verdict::Indeterminate
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Compliant => "compliant",
            Verdict::NotCompliant => "not_compliant",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub tool_version: String,
    pub source_id: String,
    pub stats: TextStats,
    pub findings: Vec<Finding>,
    pub verdict: Verdict,
    /// Satisfied usability guidelines, out of six.
    pub usability_score: usize,
}

impl Report {
    pub fn new(source_id: String, stats: TextStats, findings: Vec<Finding>, verdict: Verdict) -> Self {
        let usability_score = findings
            .iter()
            .filter(|f| !f.rule_id.is_gdpr() && f.status == Status::Satisfied)
            .count();
        Report {
            tool_version: TOOL_VERSION.to_string(),
            source_id,
            stats,
            findings,
            verdict,
            usability_score,
        }
    }

    pub fn finding(&self, id: RuleId) -> Option<&Finding> {
        self.findings.iter().find(|f| f.rule_id == id)
    }

    pub fn status(&self, id: RuleId) -> Status {
        self.finding(id).map_or(Status::Indeterminate, |f| f.status)
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable summary for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.stats;
        let _ = writeln!(out, "{}", self.source_id);
        let _ = writeln!(
            out,
            "  gfi {:.2} | {} words | {} sentences | {} complex ({:.2}%)",
            s.gfi,
            s.word_count,
            s.sentence_count,
            s.complex_word_count,
            s.complex_percent()
        );
        for f in &self.findings {
            let mark = match f.status {
                Status::Satisfied => "pass",
                Status::NotSatisfied => "FAIL",
                Status::Indeterminate => " ?? ",
            };
            let _ = writeln!(out, "  [{mark}] {:<6} {}", f.rule_id.as_str(), f.message);
            if f.status != Status::Satisfied && !f.remediation.is_empty() {
                let _ = writeln!(out, "           fix: {}", f.remediation);
            }
        }
        let _ = writeln!(out, "  verdict: {}  usability: {}/6", self.verdict.as_str(), self.usability_score);
        out
    }
}

/// Fixed-precision JSON number.
/// `value` with exactly `decimals` places; negative zero prints as zero.
pub fn fixed(value: f64, decimals: usize) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.decimals$}")
}

pub(crate) struct Fixed(pub f64, pub usize);

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(fixed(self.0, self.1)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

struct StatsView<'a>(&'a TextStats);

impl Serialize for StatsView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let t = self.0;
        let mut st = s.serialize_struct("TextStats", 6)?;
        st.serialize_field("word_count", &t.word_count)?;
        st.serialize_field("sentence_count", &t.sentence_count)?;
        st.serialize_field("complex_word_count", &t.complex_word_count)?;
        st.serialize_field("complex_percent", &Fixed(t.complex_percent(), 2))?;
        st.serialize_field("complex_ratio", &Fixed(t.complex_ratio, 4))?;
        st.serialize_field("gfi", &Fixed(t.gfi, 2))?;
        st.end()
    }
}

struct EvidenceView<'a>(&'a crate::ruleset::Evidence);

impl Serialize for EvidenceView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let e = self.0;
        let mut st = s.serialize_struct("Evidence", 4)?;
        st.serialize_field("label", &e.label)?;
        st.serialize_field("start", &e.span.map(|sp| sp.start))?;
        st.serialize_field("end", &e.span.map(|sp| sp.end))?;
        st.serialize_field("excerpt", &e.excerpt)?;
        st.end()
    }
}

struct FindingView<'a>(&'a Finding);

impl Serialize for FindingView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let f = self.0;
        let mut st = s.serialize_struct("Finding", 6)?;
        st.serialize_field("rule_id", &f.rule_id)?;
        st.serialize_field("status", &f.status)?;
        st.serialize_field("message", &f.message)?;
        st.serialize_field("remediation", &f.remediation)?;
        st.serialize_field("flags", &f.flags)?;
        let evidence: Vec<EvidenceView> = f.evidence.iter().map(EvidenceView).collect();
        st.serialize_field("evidence", &evidence)?;
        st.end()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Report", 7)?;
        st.serialize_field("tool_version", &self.tool_version)?;
        st.serialize_field("source_id", &self.source_id)?;
        st.serialize_field("stats", &StatsView(&self.stats))?;
        let findings: Vec<FindingView> = self.findings.iter().map(FindingView).collect();
        st.serialize_field("findings", &findings)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("usability_score", &self.usability_score)?;
        st.end()
    }
}

/// Non-canonical wrapper carrying run metadata such as a timestamp.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub generated_at: String,
    pub report: &'a T,
}
