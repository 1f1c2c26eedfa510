//! Per-document summary rows for batch runs.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::report::{Fixed, Report, Verdict};
use crate::ruleset::{RuleId, Status};
use crate::textmetrics::TextStats;

/// One document's line in a corpus summary.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRow {
    pub source_id: String,
    pub stats: TextStats,
    /// GDPR1..GDPR6 in order.
    pub statuses: [Status; 6],
    pub verdict: Verdict,
    /// Set when the source could not be loaded; the row is then indeterminate.
    pub error: Option<String>,
}

impl CorpusRow {
    pub fn from_report(report: &Report) -> Self {
        let mut statuses = [Status::Indeterminate; 6];
        for (slot, id) in statuses.iter_mut().zip(RuleId::GDPR) {
            *slot = report.status(id);
        }
        CorpusRow {
            source_id: report.source_id.clone(),
            stats: report.stats,
            statuses,
            verdict: report.verdict,
            error: None,
        }
    }

    pub fn failed(source_id: impl Into<String>, error: impl Into<String>) -> Self {
        CorpusRow {
            source_id: source_id.into(),
            stats: TextStats::from_counts(0, 0, 0),
            statuses: [Status::Indeterminate; 6],
            verdict: Verdict::Indeterminate,
            error: Some(error.into()),
        }
    }

    /// 100 × complex / words, zero for an empty document.
    pub fn complex_percent(&self) -> f64 {
        self.stats.complex_percent()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfiAggregate {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSummary {
    pub rows: Vec<CorpusRow>,
}

impl CorpusSummary {
    pub fn new(rows: Vec<CorpusRow>) -> Self {
        CorpusSummary { rows }
    }

    /// Fog index statistics over rows that were analyzed.
    pub fn gfi(&self) -> Option<GfiAggregate> {
        let values: Vec<f64> = self.rows.iter().filter(|r| r.error.is_none()).map(|r| r.stats.gfi).collect();
        if values.is_empty() {
            return None;
        }
        Some(GfiAggregate {
            mean: values.iter().sum::<f64>() / values.len() as f64,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }

    pub fn compliant_count(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Compliant).count()
    }

    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("summary serializes");
        out.push('\n');
        out
    }
}

struct RowView<'a>(&'a CorpusRow);

impl Serialize for RowView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.0;
        let mut st = s.serialize_struct("CorpusRow", 12)?;
        st.serialize_field("source_id", &r.source_id)?;
        st.serialize_field("words", &r.stats.word_count)?;
        st.serialize_field("complex", &r.stats.complex_word_count)?;
        st.serialize_field("complex_percent", &Fixed(r.complex_percent(), 2))?;
        st.serialize_field("gfi", &Fixed(r.stats.gfi, 2))?;
        let statuses: Vec<(RuleId, Status)> = RuleId::GDPR.iter().copied().zip(r.statuses).collect();
        for (id, status) in statuses {
            st.serialize_field(gdpr_column(id), &status)?;
        }
        st.serialize_field("verdict", &r.verdict)?;
        st.serialize_field("error", &r.error)?;
        st.end()
    }
}

struct AggregateView(Option<GfiAggregate>);

impl Serialize for AggregateView {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GfiAggregate", 3)?;
        match self.0 {
            Some(a) => {
                st.serialize_field("mean", &Fixed(a.mean, 2))?;
                st.serialize_field("min", &Fixed(a.min, 2))?;
                st.serialize_field("max", &Fixed(a.max, 2))?;
            }
            None => {
                st.serialize_field("mean", &None::<f64>)?;
                st.serialize_field("min", &None::<f64>)?;
                st.serialize_field("max", &None::<f64>)?;
            }
        }
        st.end()
    }
}

impl Serialize for CorpusSummary {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CorpusSummary", 4)?;
        st.serialize_field("documents", &self.rows.len())?;
        st.serialize_field("compliant", &self.compliant_count())?;
        st.serialize_field("gfi", &AggregateView(self.gfi()))?;
        let rows: Vec<RowView> = self.rows.iter().map(RowView).collect();
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Column name for a GDPR rule: `gdpr1` .. `gdpr6`.
pub fn gdpr_column(id: RuleId) -> &'static str {
    match id {
        RuleId::Gdpr1 => "gdpr1",
        RuleId::Gdpr2 => "gdpr2",
        RuleId::Gdpr3 => "gdpr3",
        RuleId::Gdpr4 => "gdpr4",
        RuleId::Gdpr5 => "gdpr5",
        RuleId::Gdpr6 => "gdpr6",
        other => panic!("{other} is not a GDPR rule"),
    }
}
