use std::collections::BTreeSet;

use super::finding::Evidence;
use super::spec::{RuleId, RuleSet};
use crate::document::{Document, MarkerKind};
use crate::span::Span;
use crate::textmetrics::{tokenize, TokenizedText, WordKind};

/// A pattern match inside the document body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Hit {
    pub span: Span,
    pub sentence: usize,
    pub label: &'static str,
}

/// Shared per-document state for all detectors.
pub(crate) struct Context<'a> {
    pub doc: &'a Document,
    pub rules: &'a RuleSet,
    pub tokens: TokenizedText,
}

impl<'a> Context<'a> {
    pub fn new(doc: &'a Document, rules: &'a RuleSet) -> Self {
        Context {
            doc,
            rules,
            tokens: tokenize(&doc.body),
        }
    }

    pub fn has_words(&self) -> bool {
        !self.tokens.words.is_empty()
    }

    pub fn enabled(&self, id: RuleId) -> bool {
        self.rules.rule(id).enabled
    }

    pub fn window(&self, id: RuleId) -> usize {
        self.rules.threshold(id, "sentence_window").round() as usize
    }

    fn sentence_of(&self, offset: usize) -> usize {
        self.tokens
            .sentences
            .partition_point(|s| s.start <= offset)
            .saturating_sub(1)
    }

    /// All matches of `concept` under rule `id`, ordered by position.
    pub fn hits(&self, id: RuleId, concept: &'static str) -> Vec<Hit> {
        let body = &self.doc.body;
        let mut seen = BTreeSet::new();
        for pattern in self.rules.rule(id).patterns(concept) {
            for m in pattern.regex().find_iter(body) {
                if m.start() == m.end() {
                    continue;
                }
                if concept == "phone" && !plausible_phone(m.as_str()) {
                    continue;
                }
                let span = Span::new(m.start(), m.end());
                seen.insert(Hit {
                    span,
                    sentence: self.sentence_of(span.start),
                    label: concept,
                });
            }
        }
        seen.into_iter().collect()
    }

    /// Control markers recorded at extraction time, as hits.
    pub fn marker_hits(&self, kind: MarkerKind) -> Vec<Hit> {
        let label = match kind {
            MarkerKind::OptIn => "control:opt_in",
            MarkerKind::OptOut => "control:opt_out",
        };
        self.doc
            .interactive_markers
            .iter()
            .filter(|m| m.kind == kind)
            .map(|m| Hit {
                span: m.span,
                sentence: self.sentence_of(m.span.start),
                label,
            })
            .collect()
    }

    /// Whether a word token covering `span` is a URL or email address.
    pub fn inside_address(&self, span: Span) -> bool {
        let i = self.tokens.words.partition_point(|w| w.span.end <= span.start);
        self.tokens
            .words
            .get(i)
            .is_some_and(|w| w.span.overlaps(&span) && matches!(w.kind, WordKind::Url | WordKind::Email))
    }

    pub fn evidence(&self, hits: &[Hit]) -> Vec<Evidence> {
        let mut hits = hits.to_vec();
        hits.sort();
        hits.dedup();
        hits.iter()
            .map(|h| Evidence::spanned(h.label, h.span, &self.doc.body))
            .collect()
    }
}

/// Hits from `a` and `b` that fall within `window` sentences of a hit from
/// the other list. Empty when no pair exists.
pub(crate) fn paired(a: &[Hit], b: &[Hit], window: usize) -> Vec<Hit> {
    let near = |x: &Hit, y: &Hit| x.sentence.abs_diff(y.sentence) <= window;
    let mut out: Vec<Hit> = a
        .iter()
        .filter(|x| b.iter().any(|y| near(x, y)))
        .chain(b.iter().filter(|y| a.iter().any(|x| near(x, y))))
        .copied()
        .collect();
    out.sort();
    out
}

fn plausible_phone(text: &str) -> bool {
    let digits = text.chars().filter(char::is_ascii_digit).count();
    (7..=15).contains(&digits)
}
