//! Usability guideline checks (UG-A to UG-F).
//!
//! These feed the usability score only; they never change the verdict.

use std::collections::BTreeSet;

use super::context::{Context, Hit};
use super::finding::{Evidence, Finding, Status};
use super::spec::RuleId;
use crate::document::MarkerKind;
use crate::textmetrics::{tokenize, TextStats};

pub(crate) fn check_all(ctx: &Context, stats: &TextStats) -> Vec<Finding> {
    RuleId::GUIDELINES
        .iter()
        .map(|id| {
            if !ctx.enabled(*id) {
                return Finding::indeterminate(*id, "rule disabled in the active rule set");
            }
            match id {
                RuleId::UgA => modality(ctx),
                RuleId::UgB => personal(ctx),
                RuleId::UgC => control(ctx),
                RuleId::UgD => trust(ctx),
                RuleId::UgE => overview(ctx),
                RuleId::UgF => understandability(ctx, stats),
                _ => unreachable!("guideline ids only"),
            }
        })
        .collect()
}

/// Pictures ease communication, but every image needs alt text.
fn modality(ctx: &Context) -> Finding {
    let id = RuleId::UgA;
    let doc = ctx.doc;
    if !doc.format.supports_images() {
        return Finding::indeterminate(id, "plain text input carries no image information");
    }
    if doc.images.is_empty() {
        return Finding::new(id, Status::NotSatisfied, "no icons or images mark the sections")
            .with_remediation("Add a small icon to each section, with alt text.");
    }
    let missing: Vec<&str> = doc
        .images
        .iter()
        .filter(|i| i.alt.trim().is_empty())
        .map(|i| i.src.as_str())
        .collect();
    let evidence = doc
        .images
        .iter()
        .filter(|i| !i.alt.trim().is_empty())
        .map(|i| Evidence::note("image", i.alt.clone()))
        .collect();
    if missing.is_empty() {
        Finding::new(id, Status::Satisfied, format!("{} images, all with alt text", doc.images.len())).with_evidence(evidence)
    } else {
        Finding::new(
            id,
            Status::NotSatisfied,
            format!("{} of {} images lack alt text: {}", missing.len(), doc.images.len(), missing.join(", ")),
        )
        .with_evidence(evidence)
        .with_remediation("Give every image alt text so the policy stays accessible.")
    }
}

fn personal(ctx: &Context) -> Finding {
    let id = RuleId::UgB;
    let words = ctx.tokens.words.len();
    if words == 0 {
        return Finding::indeterminate(id, "document body has no text to check");
    }
    let per = ctx.rules.threshold(id, "words_per_pronoun");
    let pronouns = ctx.hits(id, "pronoun");
    let count = pronouns.len();
    let message = format!("{count} second-person pronouns in {words} words");
    if count > 0 && count as f64 * per >= words as f64 {
        Finding::new(id, Status::Satisfied, message).with_evidence(ctx.evidence(&pronouns))
    } else {
        Finding::new(id, Status::NotSatisfied, format!("{message}; at least one per {per} words expected"))
            .with_evidence(ctx.evidence(&pronouns))
            .with_remediation("Address the reader directly with \"you\" and \"your\".")
    }
}

fn control(ctx: &Context) -> Finding {
    let id = RuleId::UgC;
    let mut hits: Vec<Hit> = ctx.hits(id, "opt_in");
    hits.extend(ctx.hits(id, "opt_out"));
    hits.extend(ctx.marker_hits(MarkerKind::OptIn));
    hits.extend(ctx.marker_hits(MarkerKind::OptOut));
    if hits.is_empty() {
        Finding::new(id, Status::NotSatisfied, "no opt-in or opt-out control")
            .with_remediation("Offer visible \"Opt in here\" / \"Opt out here\" controls next to each purpose.")
    } else {
        Finding::new(id, Status::Satisfied, "the reader is offered opt-in or opt-out controls").with_evidence(ctx.evidence(&hits))
    }
}

fn trust(ctx: &Context) -> Finding {
    let id = RuleId::UgD;
    let seal = ctx.hits(id, "seal");
    let security = ctx.hits(id, "security");
    let phone: Vec<Hit> = ctx
        .hits(id, "phone")
        .into_iter()
        .filter(|h| !ctx.inside_address(h.span))
        .collect();
    let enforcement = ctx.hits(id, "enforcement");

    let seal_rule = ctx.rules.rule(id);
    let seal_images: Vec<Evidence> = ctx
        .doc
        .images
        .iter()
        .filter(|img| {
            img.role.eq_ignore_ascii_case("seal")
                || seal_rule.patterns("seal").iter().any(|p| p.regex().is_match(&img.alt))
        })
        .map(|img| Evidence::note("seal_image", img.alt.clone()))
        .collect();

    let has_seal = !seal.is_empty() || !seal_images.is_empty();
    let has_security = !security.is_empty();
    let has_phone = !phone.is_empty();
    let has_enforcement = !enforcement.is_empty();

    let mut evidence_hits = seal.clone();
    evidence_hits.extend(security.iter().copied());
    evidence_hits.extend(phone.iter().copied());
    evidence_hits.extend(enforcement.iter().copied());
    let mut evidence = ctx.evidence(&evidence_hits);
    evidence.extend(seal_images);

    let mut missing = Vec::new();
    if !(has_seal || has_security) {
        missing.push("a privacy seal or security assurance");
    }
    if !has_phone {
        missing.push("a telephone number");
    }
    if !has_enforcement {
        missing.push("how the assurances are enforced");
    }

    let mut finding = if missing.is_empty() {
        Finding::new(id, Status::Satisfied, "assurance, telephone contact and enforcement are all present")
    } else {
        Finding::new(id, Status::NotSatisfied, format!("missing {}", missing.join(", ")))
            .with_remediation("Reassure the reader: state how data is secured, give a phone number, and say who enforces it.")
    };
    finding.evidence = evidence;
    finding.flags.insert("has_seal".into(), has_seal);
    finding.flags.insert("has_security".into(), has_security);
    finding.flags.insert("has_phone".into(), has_phone);
    finding.flags.insert("has_enforcement".into(), has_enforcement);
    finding
}

/// Short sections, each linking to more detail.
fn overview(ctx: &Context) -> Finding {
    let id = RuleId::UgE;
    let doc = ctx.doc;
    if doc.sections.is_empty() {
        return Finding::new(id, Status::NotSatisfied, "the policy has no sections to give an overview")
            .with_remediation("Split the policy into short headed sections, each linking to more information.");
    }
    let cap = ctx.rules.threshold(id, "max_section_words");
    let patterns = ctx.rules.rule(id).patterns("more_info");

    let mut problems = Vec::new();
    let mut evidence = Vec::new();
    for section in &doc.sections {
        let words = tokenize(doc.slice(section.body)).words.len();
        if words as f64 > cap {
            problems.push(format!("\"{}\" has {words} words (max {cap})", section.heading));
        }
        let links: Vec<_> = section
            .links
            .iter()
            .filter(|l| patterns.iter().any(|p| p.regex().is_match(&l.text)))
            .collect();
        if links.is_empty() {
            problems.push(format!("\"{}\" has no link to more information", section.heading));
        }
        for link in links {
            if doc.body.get(link.span.range()) == Some(link.text.as_str()) {
                evidence.push(Evidence::spanned("more_info", link.span, &doc.body));
            } else {
                evidence.push(Evidence::note("more_info", link.text.clone()));
            }
        }
    }

    if problems.is_empty() {
        Finding::new(id, Status::Satisfied, format!("{} short sections, each linking to more information", doc.sections.len()))
            .with_evidence(evidence)
    } else {
        Finding::new(id, Status::NotSatisfied, problems.join("; "))
            .with_evidence(evidence)
            .with_remediation("Keep each section brief and link to the full details.")
    }
}

fn understandability(ctx: &Context, stats: &TextStats) -> Finding {
    let id = RuleId::UgF;
    if !ctx.has_words() {
        return Finding::indeterminate(id, "document body has no text to check");
    }
    let mean_cap = ctx.rules.threshold(id, "mean_sentence_words");
    let max_cap = ctx.rules.threshold(id, "max_sentence_words");

    let lengths = ctx.tokens.sentence_lengths();
    let longest = lengths.iter().copied().max().unwrap_or(0);
    let mean = stats.mean_sentence_length();
    let acronyms = unexpanded_acronyms(ctx);
    let distinct: BTreeSet<&str> = acronyms.iter().map(|h| ctx.doc.slice(h.span)).collect();

    let summary = format!(
        "mean sentence {mean:.1} words, longest {longest} words, {} unexpanded acronyms",
        distinct.len()
    );
    let mut evidence = vec![Evidence::note("stats", summary.clone())];
    evidence.extend(ctx.evidence(&acronyms));

    let mut problems = Vec::new();
    if mean > mean_cap {
        problems.push(format!("mean sentence length {mean:.1} exceeds {mean_cap}"));
    }
    if longest as f64 > max_cap {
        problems.push(format!("a sentence of {longest} words exceeds {max_cap}"));
    }
    if !distinct.is_empty() {
        problems.push(format!(
            "unexpanded acronyms: {}",
            distinct.iter().copied().collect::<Vec<_>>().join(", ")
        ));
    }

    if problems.is_empty() {
        Finding::new(id, Status::Satisfied, summary).with_evidence(evidence)
    } else {
        Finding::new(id, Status::NotSatisfied, problems.join("; "))
            .with_evidence(evidence)
            .with_remediation("Use short, simple sentences and spell out acronyms.")
    }
}

/// Acronym occurrences whose text is never expanded in the document.
///
/// An acronym counts as expanded when some occurrence is directly followed
/// by a parenthesized phrase, `DPO (data protection officer)`, or is itself
/// the parenthesized short form, `data protection officer (DPO)`.
fn unexpanded_acronyms(ctx: &Context) -> Vec<Hit> {
    let body = &ctx.doc.body;
    let hits: Vec<Hit> = ctx
        .hits(RuleId::UgF, "acronym")
        .into_iter()
        .filter(|h| !ctx.inside_address(h.span))
        .collect();

    let expanded: BTreeSet<&str> = hits
        .iter()
        .filter(|h| {
            let after = body[h.span.end..].trim_start_matches([' ', '\t']);
            let before = body[..h.span.start].trim_end_matches([' ', '\t']);
            let follows_expansion = after.starts_with('(') && after.find(')').is_some_and(|close| close > 1);
            let is_short_form = before.ends_with('(') && after.starts_with(')');
            follows_expansion || is_short_form
        })
        .map(|h| &body[h.span.range()])
        .collect();

    hits.into_iter()
        .filter(|h| !expanded.contains(&body[h.span.range()]))
        .collect()
}
