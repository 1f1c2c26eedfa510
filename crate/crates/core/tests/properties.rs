//! Invariants checked over generated inputs.

mod common;

use common::text::{append_to_last_sentence, complex_word, plain_text, policy_text};
use proptest::prelude::*;

use policylint_core::textmetrics::gunning_fog;
use policylint_core::{analyze_default, compute_stats, tokenize, Document, MetricSettings, RuleId, RuleSet, Status};

fn stats(text: &str) -> policylint_core::TextStats {
    compute_stats(text, &MetricSettings::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn appending_a_complex_word_raises_gfi(text in plain_text(), word in complex_word()) {
        let before = stats(&text);
        prop_assume!(before.complex_word_count < before.word_count);
        let after = stats(&append_to_last_sentence(&text, word));
        prop_assert_eq!(after.word_count, before.word_count + 1);
        prop_assert_eq!(after.sentence_count, before.sentence_count);
        prop_assert_eq!(after.complex_word_count, before.complex_word_count + 1);
        prop_assert!(after.gfi > before.gfi);
    }

    #[test]
    fn counts_add_across_a_sentence_break(a in plain_text(), b in plain_text()) {
        let (sa, sb) = (stats(&a), stats(&b));
        let joined = stats(&format!("{a}\n\n{b}"));
        prop_assert_eq!(joined.word_count, sa.word_count + sb.word_count);
        prop_assert_eq!(joined.sentence_count, sa.sentence_count + sb.sentence_count);
        prop_assert_eq!(joined.complex_word_count, sa.complex_word_count + sb.complex_word_count);
    }

    #[test]
    fn stats_obey_the_formula(text in policy_text()) {
        let s = stats(&text);
        prop_assert!(s.complex_word_count <= s.word_count);
        prop_assert!(s.word_count == 0 || s.sentence_count >= 1);
        prop_assert!((s.gfi - gunning_fog(s.word_count, s.sentence_count, s.complex_word_count)).abs() < 1e-12);
    }

    #[test]
    fn token_spans_are_ordered_and_nested(text in policy_text()) {
        let t = tokenize(&text);
        for pair in t.words.windows(2) {
            prop_assert!(pair[0].span.end <= pair[1].span.start);
        }
        for pair in t.sentences.windows(2) {
            prop_assert!(pair[0].end <= pair[1].start);
        }
        for w in &t.words {
            prop_assert!(w.syllables >= 1);
            let s = t.sentences[w.sentence];
            prop_assert!(s.start <= w.span.start && w.span.end <= s.end);
        }
    }

    #[test]
    fn appending_never_unsatisfies_gdpr1_to_5(a in policy_text(), b in policy_text()) {
        let rules = RuleSet::defaults();
        let before = analyze_default(&Document::from_text("a", a.clone()), &rules);
        let after = analyze_default(&Document::from_text("ab", format!("{a} {b}")), &rules);
        for id in &RuleId::GDPR[..5] {
            if before.status(*id) == Status::Satisfied && *id != RuleId::Gdpr3 {
                prop_assert_eq!(after.status(*id), Status::Satisfied, "{}", id);
            }
        }
    }

    #[test]
    fn evidence_matches_its_label(text in policy_text()) {
        let rules = RuleSet::defaults();
        let doc = Document::from_text("t", text);
        let report = analyze_default(&doc, &rules);
        for f in &report.findings {
            for e in &f.evidence {
                let Some(span) = e.span else { continue };
                let slice = doc.slice(span);
                prop_assert_eq!(slice, e.excerpt.as_str());
                let patterns = rules.rule(f.rule_id).patterns(&e.label);
                prop_assert!(
                    patterns.iter().any(|p| p.regex().is_match(slice)),
                    "{} evidence {:?} does not match concept {}", f.rule_id, slice, e.label
                );
            }
        }
    }

    #[test]
    fn analysis_is_idempotent(text in policy_text()) {
        let rules = RuleSet::defaults();
        let doc = Document::from_text("t", text);
        let a = analyze_default(&doc, &rules);
        let b = analyze_default(&doc, &rules);
        prop_assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn gdpr3_is_not_monotone() {
    // A later profiling statement without an opt-out can withdraw GDPR3.
    let rules = RuleSet::defaults();
    let a = "We rely on your consent to keep your name.";
    let before = analyze_default(&Document::from_text("a", a), &rules);
    let after = analyze_default(&Document::from_text("ab", format!("{a} We profile users to rank offers.")), &rules);
    assert_eq!(before.status(RuleId::Gdpr3), Status::Satisfied);
    assert_eq!(after.status(RuleId::Gdpr3), Status::NotSatisfied);
}
