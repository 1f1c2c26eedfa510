use std::collections::BTreeMap;

use serde::Serialize;

use super::spec::RuleId;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Satisfied,
    NotSatisfied,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Satisfied => "satisfied",
            Status::NotSatisfied => "not_satisfied",
            Status::Indeterminate => "indeterminate",
        }
    }
}

/// A piece of support for a finding.
///
/// Spanned evidence points into the document body and its slice matches the
/// concept named by `label`. Evidence without a span summarizes metadata
/// (image alt text, text statistics).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub label: String,
    pub span: Option<Span>,
    pub excerpt: String,
}

impl Evidence {
    pub fn spanned(label: impl Into<String>, span: Span, body: &str) -> Self {
        Evidence {
            label: label.into(),
            span: Some(span),
            excerpt: span.slice(body).to_string(),
        }
    }

    pub fn note(label: impl Into<String>, excerpt: impl Into<String>) -> Self {
        Evidence {
            label: label.into(),
            span: None,
            excerpt: excerpt.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub rule_id: RuleId,
    pub status: Status,
    pub message: String,
    pub remediation: String,
    pub evidence: Vec<Evidence>,
    /// Named sub-checks, e.g. `has_phone` on the contact rule.
    pub flags: BTreeMap<String, bool>,
}

impl Finding {
    pub fn new(rule_id: RuleId, status: Status, message: impl Into<String>) -> Self {
        Finding {
            rule_id,
            status,
            message: message.into(),
            remediation: String::new(),
            evidence: Vec::new(),
            flags: BTreeMap::new(),
        }
    }

    pub fn indeterminate(rule_id: RuleId, message: impl Into<String>) -> Self {
        Finding::new(rule_id, Status::Indeterminate, message)
    }

    pub fn with_evidence(mut self, evidence: Vec<Evidence>) -> Self {
        self.evidence = evidence;
        self
    }

    pub fn with_remediation(mut self, text: impl Into<String>) -> Self {
        self.remediation = text.into();
        self
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.get(name).copied()
    }

    pub fn is_satisfied(&self) -> bool {
        self.status == Status::Satisfied
    }
}
