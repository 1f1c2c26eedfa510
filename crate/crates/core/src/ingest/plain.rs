//! Plain text: blank lines separate paragraphs, `#` lines are headings.

use super::builder::BodyBuilder;
use crate::document::{Document, SourceFormat};

/// A standalone paragraph this short that reads like a control counts as one.
pub(crate) const SHORT_CONTROL_WORDS: usize = 4;

pub(crate) fn extract(source_id: String, text: &str) -> Document {
    let mut b = BodyBuilder::new();
    let mut para_start = None;

    let close = |b: &mut BodyBuilder, start: &mut Option<usize>| {
        if let Some(span) = start.take().and_then(|s| b.trimmed(s, b.len())) {
            b.short_control(span, SHORT_CONTROL_WORDS);
        }
        b.end_block();
    };

    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            close(&mut b, &mut para_start);
        } else if let Some(heading) = heading_text(trimmed) {
            close(&mut b, &mut para_start);
            b.begin_heading();
            b.text(heading);
            b.end_heading();
        } else {
            para_start.get_or_insert(b.len());
            b.space();
            b.text(trimmed);
        }
    }
    close(&mut b, &mut para_start);
    b.finish(source_id, SourceFormat::Text)
}

fn heading_text(line: &str) -> Option<&str> {
    let rest = line.trim_start_matches('#');
    let level = line.len() - rest.len();
    ((1..=6).contains(&level) && rest.starts_with(' ')).then(|| rest.trim().trim_end_matches('#').trim())
}
