//! Detectors for the six customer-facing GDPR obligations.
//!
//! GDPR1-GDPR5 are existential: one matching passage anywhere in the body
//! satisfies them, so appending text never un-satisfies them. GDPR6 compares
//! the whole document's fog index against a cutoff and can go either way.

use std::collections::BTreeSet;

use super::context::{paired, Context, Hit};
use super::finding::{Evidence, Finding, Status};
use super::spec::RuleId;
use crate::document::MarkerKind;
use crate::textmetrics::TextStats;

const BASES: [&str; 6] = [
    "consent",
    "contract",
    "legal_obligation",
    "vital_interests",
    "public_interest",
    "legitimate_interest",
];

fn precheck(ctx: &Context, id: RuleId) -> Option<Finding> {
    if !ctx.enabled(id) {
        return Some(Finding::indeterminate(id, "rule disabled in the active rule set"));
    }
    if !ctx.has_words() {
        return Some(Finding::indeterminate(id, "document body has no text to check"));
    }
    None
}

pub(crate) fn gdpr1(ctx: &Context) -> Finding {
    let id = RuleId::Gdpr1;
    if let Some(f) = precheck(ctx, id) {
        return f;
    }
    let verbs = ctx.hits(id, "collection_verb");
    let items = ctx.hits(id, "personal_data");
    let support = paired(&verbs, &items, ctx.window(id));

    if support.is_empty() {
        Finding::new(id, Status::NotSatisfied, "no statement of which personal data is collected")
            .with_remediation("List the personal data you collect, e.g. \"We keep your name, email and phone number.\"")
    } else {
        Finding::new(id, Status::Satisfied, "the policy states which personal data is collected")
            .with_evidence(ctx.evidence(&support))
    }
}

pub(crate) fn gdpr2(ctx: &Context) -> Finding {
    let id = RuleId::Gdpr2;
    if let Some(f) = precheck(ctx, id) {
        return f;
    }
    let verbs = ctx.hits(id, "use_verb");
    let connectives = ctx.hits(id, "purpose_connective");
    let window = ctx.window(id);

    let mut support = Vec::new();
    for v in &verbs {
        for c in &connectives {
            if c.sentence.abs_diff(v.sentence) <= window && c.span.start >= v.span.end {
                support.push(*v);
                support.push(*c);
            }
        }
    }

    if support.is_empty() {
        Finding::new(id, Status::NotSatisfied, "data use is never tied to a purpose or benefit")
            .with_remediation("Say why you use the data, e.g. \"We use your email to send your receipt.\"")
    } else {
        Finding::new(id, Status::Satisfied, "the policy justifies its data use")
            .with_evidence(ctx.evidence(&support))
    }
}

pub(crate) fn gdpr3(ctx: &Context) -> Finding {
    let id = RuleId::Gdpr3;
    if let Some(f) = precheck(ctx, id) {
        return f;
    }
    let window = ctx.window(id);
    let min_bases = ctx.rules.threshold(id, "min_bases_sensitive").round() as usize;

    let mut basis_hits: Vec<Hit> = Vec::new();
    let mut kinds: BTreeSet<&str> = BTreeSet::new();
    for kind in BASES {
        let hits = ctx.hits(id, kind);
        if !hits.is_empty() {
            kinds.insert(kind);
        }
        basis_hits.extend(hits);
    }

    let mut opt_in = ctx.hits(id, "opt_in");
    opt_in.extend(ctx.marker_hits(MarkerKind::OptIn));
    let mut opt_out = ctx.hits(id, "opt_out");
    opt_out.extend(ctx.marker_hits(MarkerKind::OptOut));
    if !opt_in.is_empty() {
        kinds.insert("consent");
    }

    let profiling = ctx.hits(id, "profiling");
    let sensitive = paired(&ctx.hits(id, "sensitive_data"), &ctx.hits(id, "collection_verb"), window);
    let sensitive_terms: Vec<Hit> = sensitive.iter().filter(|h| h.label == "sensitive_data").copied().collect();

    let mut evidence_hits = basis_hits;
    evidence_hits.extend(opt_in.iter().copied());

    let (status, message, remediation) = if kinds.is_empty() {
        (
            Status::NotSatisfied,
            "no lawful basis for processing is stated".to_string(),
            "Name the lawful basis, e.g. consent with an \"Opt in here\" control, or a contract with the user.",
        )
    } else if !profiling.is_empty() && opt_out.is_empty() {
        evidence_hits.extend(profiling.iter().copied());
        (
            Status::NotSatisfied,
            "profiling is mentioned but no opt-out is offered".to_string(),
            "Add an \"Opt out here\" control for profiling or automated decisions.",
        )
    } else if !sensitive_terms.is_empty() && kinds.len() < min_bases {
        evidence_hits.extend(sensitive_terms.iter().copied());
        (
            Status::NotSatisfied,
            format!(
                "special category data is collected but only {} lawful basis is stated; {} needed",
                kinds.len(),
                min_bases
            ),
            "State a separate basis for sensitive data such as health, politics or religion.",
        )
    } else {
        evidence_hits.extend(profiling.iter().copied());
        evidence_hits.extend(opt_out.iter().copied());
        (
            Status::Satisfied,
            format!("lawful basis stated: {}", kinds.iter().copied().collect::<Vec<_>>().join(", ")),
            "",
        )
    };

    let mut finding = Finding::new(id, status, message)
        .with_remediation(remediation)
        .with_evidence(ctx.evidence(&evidence_hits));
    finding.flags.insert("profiling_mentioned".into(), !profiling.is_empty());
    finding.flags.insert("opt_out_present".into(), !opt_out.is_empty());
    finding.flags.insert("sensitive_data".into(), !sensitive_terms.is_empty());
    finding
}

pub(crate) fn gdpr4(ctx: &Context) -> Finding {
    let id = RuleId::Gdpr4;
    if let Some(f) = precheck(ctx, id) {
        return f;
    }
    let verbs = ctx.hits(id, "retention_verb");
    let durations = ctx.hits(id, "duration");
    let support = paired(&verbs, &durations, ctx.window(id));

    if support.is_empty() {
        Finding::new(id, Status::NotSatisfied, "no retention period is stated")
            .with_remediation("State how long data is kept, e.g. \"We delete your data after one month.\"")
    } else {
        Finding::new(id, Status::Satisfied, "the policy states how long data is kept")
            .with_evidence(ctx.evidence(&support))
    }
}

pub(crate) fn gdpr5(ctx: &Context) -> Finding {
    let id = RuleId::Gdpr5;
    if let Some(f) = precheck(ctx, id) {
        return f;
    }
    let window = ctx.window(id);
    let emails = ctx.hits(id, "email");
    let postal = ctx.hits(id, "postal");
    let phones: Vec<Hit> = ctx
        .hits(id, "phone")
        .into_iter()
        .filter(|h| !ctx.inside_address(h.span))
        .collect();
    let phrases = ctx.hits(id, "contact_phrase");
    let dpo = ctx.hits(id, "dpo");
    let timescale = paired(&ctx.hits(id, "timescale"), &ctx.hits(id, "request"), window);

    let addresses: Vec<Hit> = emails.iter().chain(&postal).copied().collect();
    let support = paired(&addresses, &phrases, window);

    let mut evidence = support.clone();
    evidence.extend(phones.iter().copied());
    evidence.extend(dpo.iter().copied());
    evidence.extend(timescale.iter().copied());

    let mut finding = if support.is_empty() {
        Finding::new(id, Status::NotSatisfied, "no contact address for removal or access requests")
            .with_remediation("Give an email or postal address next to how to ask for data removal or a copy.")
    } else {
        Finding::new(id, Status::Satisfied, "the policy gives a contact for data requests")
    };
    if finding.is_satisfied() {
        let mut missing = Vec::new();
        if dpo.is_empty() {
            missing.push("name the data protection officer");
        }
        if timescale.is_empty() {
            missing.push("say how fast access requests are answered");
        }
        if phones.is_empty() {
            missing.push("add a phone number");
        }
        if !missing.is_empty() {
            finding.remediation = format!("Consider: {}.", missing.join("; "));
        }
    }
    finding.evidence = ctx.evidence(&evidence);
    finding.flags.insert("has_email".into(), !emails.is_empty());
    finding.flags.insert("has_postal".into(), !postal.is_empty());
    finding.flags.insert("has_phone".into(), !phones.is_empty());
    finding.flags.insert("mentions_dpo".into(), !dpo.is_empty());
    finding.flags.insert("mentions_timescale".into(), !timescale.is_empty());
    finding
}

/// Understandability: the fog index must not exceed the cutoff (13 years).
pub(crate) fn gdpr6(ctx: &Context, stats: &TextStats) -> Finding {
    let id = RuleId::Gdpr6;
    if let Some(f) = precheck(ctx, id) {
        return f;
    }
    gdpr6_from_stats(ctx.rules.threshold(id, "gfi_max"), stats)
}

pub(crate) fn gdpr6_from_stats(cutoff: f64, stats: &TextStats) -> Finding {
    let id = RuleId::Gdpr6;
    if stats.word_count == 0 {
        return Finding::indeterminate(id, "document body has no text to check");
    }
    let summary = format!(
        "gfi {:.2}, {} words, {} sentences, complex ratio {:.4}",
        stats.gfi, stats.word_count, stats.sentence_count, stats.complex_ratio
    );
    let evidence = vec![Evidence::note("stats", summary.clone())];
    if stats.gfi <= cutoff {
        Finding::new(id, Status::Satisfied, format!("readable without more than {cutoff} years of schooling: {summary}"))
            .with_evidence(evidence)
    } else {
        Finding::new(id, Status::NotSatisfied, format!("needs more than {cutoff} years of schooling: {summary}"))
            .with_evidence(evidence)
            .with_remediation("Use shorter sentences and fewer words of three or more syllables.")
    }
}
