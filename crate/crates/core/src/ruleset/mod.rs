//! Requirement and guideline detectors over a [`Document`].
//!
//! Detectors are phrase-pattern rules whose patterns and thresholds live in
//! a [`RuleSet`], so every decision is auditable from the rules dump.
//! A rule that cannot be evaluated reports `indeterminate`, which never
//! counts as satisfied.

mod context;
mod detectors;
mod finding;
mod guidelines;
mod spec;

pub use finding::{Evidence, Finding, Status};
pub use spec::{Pattern, PatternSet, RuleId, RuleSet, RuleSpec, RulesError, DEFAULT_RULES};

use context::Context;

use crate::document::Document;
use crate::report::{Report, Verdict};
use crate::textmetrics::{stats_from_tokens, tokenize_with, MetricSettings, TextStats};

macro_rules! single_detector {
    ($(#[$doc:meta])* $name:ident, $inner:path) => {
        $(#[$doc])*
        pub fn $name(doc: &Document, rules: &RuleSet) -> Finding {
            $inner(&Context::new(doc, rules))
        }
    };
}

single_detector!(
    /// GDPR1: the policy says which personal data is collected.
    detect_gdpr1, detectors::gdpr1
);
single_detector!(
    /// GDPR2: data use is justified by a purpose.
    detect_gdpr2, detectors::gdpr2
);
single_detector!(
    /// GDPR3: a lawful processing basis is stated.
    detect_gdpr3, detectors::gdpr3
);
single_detector!(
    /// GDPR4: the retention period is stated.
    detect_gdpr4, detectors::gdpr4
);
single_detector!(
    /// GDPR5: a contact for removal and access requests is given.
    detect_gdpr5, detectors::gdpr5
);

/// GDPR6: the text needs no more than `gfi_max` years of schooling.
pub fn detect_gdpr6(doc: &Document, stats: &TextStats, rules: &RuleSet) -> Finding {
    detectors::gdpr6(&Context::new(doc, rules), stats)
}

/// GDPR6 decision on precomputed statistics alone.
pub fn gdpr6_verdict(stats: &TextStats, rules: &RuleSet) -> Finding {
    detectors::gdpr6_from_stats(rules.threshold(RuleId::Gdpr6, "gfi_max"), stats)
}

/// The six usability guideline findings, UG-A to UG-F.
pub fn check_guidelines(doc: &Document, stats: &TextStats, rules: &RuleSet) -> Vec<Finding> {
    guidelines::check_all(&Context::new(doc, rules), stats)
}

/// Run every detector over `doc`.
pub fn analyze(doc: &Document, rules: &RuleSet, settings: &MetricSettings) -> Report {
    let ctx = Context::new(doc, rules);
    let stats = if settings.overrides.is_empty() {
        stats_from_tokens(&ctx.tokens, &settings.exclusions)
    } else {
        stats_from_tokens(&tokenize_with(&doc.body, &settings.overrides), &settings.exclusions)
    };

    let mut findings = vec![
        detectors::gdpr1(&ctx),
        detectors::gdpr2(&ctx),
        detectors::gdpr3(&ctx),
        detectors::gdpr4(&ctx),
        detectors::gdpr5(&ctx),
        detectors::gdpr6(&ctx, &stats),
    ];
    findings.extend(guidelines::check_all(&ctx, &stats));

    let verdict = Verdict::from_findings(&findings);
    Report::new(doc.source_id.clone(), stats, findings, verdict)
}

/// [`analyze`] with exclusions taken from the rule set.
pub fn analyze_default(doc: &Document, rules: &RuleSet) -> Report {
    analyze(doc, rules, &MetricSettings::with_exclusions(rules.exclusions))
}
