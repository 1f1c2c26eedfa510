//! Markdown extraction via pulldown-cmark.

use pulldown_cmark::{Event, Options, Parser, Tag, TagEnd};

use super::builder::BodyBuilder;
use super::plain::SHORT_CONTROL_WORDS;
use crate::document::{Document, SourceFormat};

pub(crate) fn extract(source_id: String, text: &str) -> Document {
    let mut b = BodyBuilder::new();
    let mut links: Vec<(usize, String)> = Vec::new();
    let mut image: Option<(String, String, String)> = None;
    let mut paragraph_start = None;

    for event in Parser::new_ext(text, Options::ENABLE_TABLES | Options::ENABLE_STRIKETHROUGH) {
        if let Some((alt, _, _)) = image.as_mut() {
            match event {
                Event::Text(t) | Event::Code(t) => alt.push_str(&t),
                Event::End(TagEnd::Image) => {
                    let (alt, src, title) = image.take().unwrap();
                    b.image(&alt, &src, &title);
                }
                _ => {}
            }
            continue;
        }
        match event {
            Event::Start(Tag::Heading { .. }) => b.begin_heading(),
            Event::End(TagEnd::Heading(_)) => b.end_heading(),
            Event::Start(Tag::Paragraph) => {
                b.end_block();
                paragraph_start = Some(b.len());
            }
            Event::End(TagEnd::Paragraph) => {
                if let Some(span) = paragraph_start.take().and_then(|s| b.trimmed(s, b.len())) {
                    b.short_control(span, SHORT_CONTROL_WORDS);
                }
                b.end_block();
            }
            Event::Start(Tag::Item | Tag::BlockQuote(_) | Tag::CodeBlock(_) | Tag::Table(_) | Tag::TableRow | Tag::TableHead)
            | Event::End(TagEnd::Item | TagEnd::BlockQuote(_) | TagEnd::CodeBlock | TagEnd::Table | TagEnd::TableRow | TagEnd::TableHead)
            | Event::Rule => b.end_block(),
            Event::Start(Tag::TableCell) | Event::End(TagEnd::TableCell) | Event::SoftBreak | Event::HardBreak => b.space(),
            Event::Start(Tag::Link { dest_url, .. }) => links.push((b.len(), dest_url.to_string())),
            Event::End(TagEnd::Link) => {
                if let Some((start, target)) = links.pop() {
                    if let Some(span) = b.trimmed(start, b.len()) {
                        b.link(span, &target);
                        b.control(span);
                    }
                }
            }
            Event::Start(Tag::Image { dest_url, title, .. }) => {
                image = Some((String::new(), dest_url.to_string(), title.to_string()));
            }
            Event::Text(t) | Event::Code(t) => {
                b.text(&t);
            }
            _ => {}
        }
    }
    b.finish(source_id, SourceFormat::Markdown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::MarkerKind;

    #[test]
    fn sections_links_and_images() {
        let md = "# Privacy\n\n## What we collect\n\n![collect](icons/collect.png \"icon\")\n\nWe keep your *name*.\n\
                  [More information](https://x.example/collect)\n\n## Why\n\nWe use it to help you.\n\n[Opt out here](#opt-out)\n";
        let doc = extract("t".into(), md);
        assert_eq!(doc.sections.len(), 2);
        assert_eq!(doc.sections[0].heading, "What we collect");
        assert_eq!(doc.sections[0].links.len(), 1);
        assert_eq!(doc.sections[0].links[0].text, "More information");
        assert_eq!(doc.images.len(), 1);
        assert_eq!(doc.images[0].alt, "collect");
        assert_eq!(doc.images[0].role, "icon");
        assert!(!doc.body.contains("collect.png"));
        assert_eq!(doc.interactive_markers.len(), 1);
        assert_eq!(doc.interactive_markers[0].kind, MarkerKind::OptOut);
        doc.validate().unwrap();
    }

    #[test]
    fn soft_breaks_join_lines() {
        let doc = extract("t".into(), "We keep\nyour name.");
        assert_eq!(doc.body, "We keep your name.");
    }
}
