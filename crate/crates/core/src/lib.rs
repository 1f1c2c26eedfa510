//! Privacy-policy linter and generator.
//!
//! Scores policy documents for readability (Gunning Fog Index) and for
//! coverage of six customer-facing GDPR obligations, checks usability
//! guidelines, and generates short, structured policies from a company
//! profile.

pub mod corpus;
pub mod document;
pub mod ingest;
pub mod span;
pub mod textmetrics;

pub use document::{Document, Image, Link, Marker, MarkerKind, Section, SourceFormat};
pub use span::Span;
pub use textmetrics::{compute_stats, tokenize, Exclusions, MetricSettings, TextStats, TokenizedText};
pub mod report;
pub mod templategen;
pub mod ruleset;

pub use corpus::{CorpusRow, CorpusSummary};
pub use report::{Report, Verdict};
pub use ruleset::{analyze, analyze_default, Finding, RuleId, RuleSet, Status};
