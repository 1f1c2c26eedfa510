//! Incremental body assembly shared by the format extractors.

use once_cell::sync::Lazy;
use regex::Regex;
use unicode_normalization::UnicodeNormalization;

use crate::document::{Document, Image, Link, Marker, MarkerKind, Section, SourceFormat};
use crate::span::Span;

static OPT_OUT: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"(?i)\b(?:opt(?:[\s-]*)out|unsubscribe|do not sell|withdraw (?:my |your )?consent)\b").unwrap());
static OPT_IN: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"(?i)\b(?:opt(?:[\s-]*)in|i (?:agree|consent)|accept all|allow all)\b").unwrap());

/// Classifies control text such as a button label.
pub fn marker_kind(label: &str) -> Option<MarkerKind> {
    if OPT_OUT.is_match(label) {
        Some(MarkerKind::OptOut)
    } else if OPT_IN.is_match(label) {
        Some(MarkerKind::OptIn)
    } else {
        None
    }
}

struct OpenSection {
    heading: String,
    heading_start: usize,
    start: usize,
}

/// Accumulates normalized, whitespace-collapsed text with paragraph breaks.
///
/// Blocks are separated by a blank line so the tokenizer sees a sentence
/// boundary between them. Every recorded span points into the final body.
#[derive(Default)]
pub(crate) struct BodyBuilder {
    body: String,
    space_pending: bool,
    sections: Vec<OpenSection>,
    heading: Option<(String, usize)>,
    links: Vec<Link>,
    images: Vec<Image>,
    markers: Vec<Marker>,
}

impl BodyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    /// Appends inline text and returns the span it occupies, if any.
    pub fn text(&mut self, raw: &str) -> Option<Span> {
        let normalized: String = raw.nfkc().collect();
        if normalized.starts_with(char::is_whitespace) {
            self.space_pending = true;
        }
        let mut first = None;
        for word in normalized.split_whitespace() {
            if self.space_pending && !self.body.is_empty() && !self.body.ends_with('\n') {
                self.body.push(' ');
            }
            first.get_or_insert(self.body.len());
            self.body.push_str(word);
            self.space_pending = true;
        }
        if first.is_some() {
            self.space_pending = normalized.ends_with(char::is_whitespace);
        }
        first.map(|start| Span::new(start, self.body.len()))
    }

    /// The non-blank part of `start..end`.
    pub fn trimmed(&self, start: usize, end: usize) -> Option<Span> {
        let slice = &self.body[start..end];
        let lead = slice.len() - slice.trim_start().len();
        let inner = slice.trim();
        (!inner.is_empty()).then(|| Span::new(start + lead, start + lead + inner.len()))
    }

    /// Forces a separating space before the next text.
    pub fn space(&mut self) {
        self.space_pending = true;
    }

    /// Closes the current paragraph.
    pub fn end_block(&mut self) {
        let trimmed = self.body.trim_end_matches(' ').len();
        self.body.truncate(trimmed);
        if !self.body.is_empty() && !self.body.ends_with("\n\n") {
            if self.body.ends_with('\n') {
                self.body.push('\n');
            } else {
                self.body.push_str("\n\n");
            }
        }
        self.space_pending = false;
    }

    pub fn begin_heading(&mut self) {
        self.end_block();
        self.heading = Some((String::new(), self.body.len()));
    }

    pub fn end_heading(&mut self) {
        let Some((_, start)) = self.heading.take() else {
            return;
        };
        let heading = self.body[start..].trim().to_string();
        self.end_block();
        if !heading.is_empty() {
            self.sections.push(OpenSection {
                heading,
                heading_start: start,
                start: self.body.len(),
            });
        }
    }

    pub fn in_heading(&self) -> bool {
        self.heading.is_some()
    }

    pub fn link(&mut self, span: Span, target: &str) {
        let text = self.body[span.range()].to_string();
        self.links.push(Link {
            text,
            target: target.trim().to_string(),
            span,
        });
    }

    pub fn image(&mut self, alt: &str, src: &str, role: &str) {
        let alt: String = alt.nfkc().collect::<String>().split_whitespace().collect::<Vec<_>>().join(" ");
        self.images.push(Image {
            alt,
            src: src.trim().to_string(),
            role: role.to_string(),
            offset: self.body.len(),
        });
    }

    /// Records a control marker if the text at `span` reads like one.
    pub fn control(&mut self, span: Span) {
        if let Some(kind) = marker_kind(&self.body[span.range()]) {
            if self.markers.iter().any(|m| m.span == span) {
                return;
            }
            self.markers.push(Marker { kind, span });
        }
    }

    /// Like [`Self::control`], for free-standing text of at most `max_words` words.
    pub fn short_control(&mut self, span: Span, max_words: usize) {
        if self.body[span.range()].split_whitespace().count() <= max_words {
            self.control(span);
        }
    }

    pub fn finish(mut self, source_id: String, format: SourceFormat) -> Document {
        self.end_heading();
        self.end_block();
        let body = self.body.trim_end().to_string();
        let len = body.len();

        let mut sections = Vec::new();
        for (i, open) in self.sections.iter().enumerate() {
            let start = open.start.min(len);
            let next = self.sections.get(i + 1).map_or(len, |s| s.heading_start.min(len));
            let end = body[..next].trim_end().len().max(start);
            let span = Span::new(start, end);
            if span.is_empty() {
                continue;
            }
            let links = self.links.iter().filter(|l| span.contains(&l.span)).cloned().collect();
            sections.push(Section {
                heading: open.heading.clone(),
                body: span,
                links,
            });
        }

        Document {
            source_id,
            format,
            body,
            sections,
            links: self.links,
            images: self.images.into_iter().map(|i| Image { offset: i.offset.min(len), ..i }).collect(),
            interactive_markers: self.markers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapses_whitespace_and_separates_blocks() {
        let mut b = BodyBuilder::new();
        b.text("  We   keep\n your ");
        b.text("name.");
        b.end_block();
        b.text("Second  block.");
        let doc = b.finish("t".into(), SourceFormat::Html);
        assert_eq!(doc.body, "We keep your name.\n\nSecond block.");
    }

    #[test]
    fn inline_text_without_spaces_joins() {
        let mut b = BodyBuilder::new();
        b.text("pre");
        b.text("fix");
        let doc = b.finish("t".into(), SourceFormat::Html);
        assert_eq!(doc.body, "prefix");
    }

    #[test]
    fn sections_span_their_bodies() {
        let mut b = BodyBuilder::new();
        b.begin_heading();
        b.text("What we collect");
        b.end_heading();
        b.text("We keep your name.");
        b.end_block();
        b.text("And your email.");
        b.begin_heading();
        b.text("Empty");
        b.end_heading();
        b.begin_heading();
        b.text("Contact");
        b.end_heading();
        let s = b.text("More information").unwrap();
        b.link(s, "/more");
        let doc = b.finish("t".into(), SourceFormat::Markdown);
        assert_eq!(doc.sections.len(), 2);
        assert_eq!(doc.slice(doc.sections[0].body), "We keep your name.\n\nAnd your email.");
        assert_eq!(doc.sections[1].heading, "Contact");
        assert_eq!(doc.sections[1].links.len(), 1);
        doc.validate().unwrap();
    }

    #[test]
    fn nfkc_normalization() {
        let mut b = BodyBuilder::new();
        b.text("ﬁle №1");
        let doc = b.finish("t".into(), SourceFormat::Text);
        assert_eq!(doc.body, "file No1");
    }

    #[test]
    fn marker_classification() {
        assert_eq!(marker_kind("Opt out here"), Some(MarkerKind::OptOut));
        assert_eq!(marker_kind("Opt-in"), Some(MarkerKind::OptIn));
        assert_eq!(marker_kind("Unsubscribe"), Some(MarkerKind::OptOut));
        assert_eq!(marker_kind("Read more"), None);
        assert_eq!(marker_kind("optional"), None);
    }
}
