//! HTML extraction with tag-based boilerplate removal.

use scraper::node::Element;
use scraper::{ElementRef, Html, Node, Selector};

use super::builder::{marker_kind, BodyBuilder};
use crate::document::{Document, Link, SourceFormat};

/// Elements dropped with their whole subtree.
const SKIP: &[&str] = &[
    "script", "style", "nav", "header", "footer", "aside", "noscript", "template", "head", "svg", "iframe", "select",
    "textarea",
];
/// ARIA landmark roles that mark boilerplate regions.
const SKIP_ROLES: &[&str] = &["navigation", "banner", "contentinfo", "complementary"];
const BLOCKS: &[&str] = &[
    "p", "div", "section", "article", "main", "ul", "ol", "li", "table", "tr", "blockquote", "pre", "dl", "dt", "dd",
    "form", "fieldset", "figure", "figcaption", "address", "hr", "body", "details", "summary",
];

pub(crate) fn extract(source_id: String, html: &str) -> Document {
    let dom = Html::parse_document(html);
    let mut b = BodyBuilder::new();
    walk(dom.root_element(), &mut b);
    b.finish(source_id, SourceFormat::Html)
}

fn skipped(el: &Element) -> bool {
    SKIP.contains(&el.name())
        || el.attr("role").is_some_and(|r| SKIP_ROLES.contains(&r.trim()))
        || el.attr("hidden").is_some()
        || el.attr("aria-hidden") == Some("true")
}

fn is_heading(name: &str) -> bool {
    matches!(name, "h1" | "h2" | "h3" | "h4" | "h5" | "h6")
}

fn walk(el: ElementRef, b: &mut BodyBuilder) {
    let value = el.value();
    if skipped(value) {
        return;
    }
    let name = value.name();
    match name {
        "br" => {
            b.space();
            return;
        }
        "img" => {
            let role = value.attr("class").unwrap_or("").split_whitespace().next().unwrap_or("");
            b.image(value.attr("alt").unwrap_or(""), value.attr("src").unwrap_or(""), role);
            return;
        }
        "input" => {
            let kind = value.attr("type").unwrap_or("text").to_ascii_lowercase();
            if matches!(kind.as_str(), "submit" | "button") {
                if let Some(span) = value.attr("value").and_then(|v| b.text(&format!(" {v} "))) {
                    b.control(span);
                }
            }
            return;
        }
        _ => {}
    }

    let heading = is_heading(name) && !b.in_heading();
    let block = BLOCKS.contains(&name);
    if heading {
        b.begin_heading();
    } else if block {
        b.end_block();
    } else if matches!(name, "td" | "th") {
        b.space();
    }

    let start = b.len();
    for child in el.children() {
        match child.value() {
            Node::Text(t) => {
                b.text(t);
            }
            Node::Element(_) => {
                if let Some(child_el) = ElementRef::wrap(child) {
                    walk(child_el, b);
                }
            }
            _ => {}
        }
    }
    let span = trimmed_span(b, start);

    match name {
        "a" => {
            if let (Some(span), Some(href)) = (span, value.attr("href")) {
                b.link(span, href);
                b.control(span);
            }
        }
        "button" | "label" => {
            if let Some(span) = span {
                b.control(span);
            }
        }
        _ => {}
    }

    if heading {
        b.end_heading();
    } else if block {
        b.end_block();
    } else if matches!(name, "td" | "th") {
        b.space();
    }
}

/// Span of the text appended since `start`, without leading separators.
fn trimmed_span(b: &BodyBuilder, start: usize) -> Option<crate::span::Span> {
    let end = b.len();
    if end <= start {
        return None;
    }
    b.trimmed(start, end)
}

/// The first anchor whose text reads like a privacy policy link.
pub fn discover_policy_link(html: &str) -> Option<Link> {
    static ANCHORS: once_cell::sync::Lazy<Selector> = once_cell::sync::Lazy::new(|| Selector::parse("a[href]").unwrap());
    let dom = Html::parse_document(html);
    dom.select(&ANCHORS).find_map(|a| {
        let text = a.text().collect::<String>().split_whitespace().collect::<Vec<_>>().join(" ");
        let label = if text.is_empty() {
            a.value().attr("title").or(a.value().attr("aria-label")).unwrap_or("").to_string()
        } else {
            text
        };
        (super::POLICY_LINK.is_match(&label) && marker_kind(&label).is_none()).then(|| Link {
            text: label,
            target: a.value().attr("href").unwrap_or("").to_string(),
            span: crate::span::Span::new(0, 0),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::MarkerKind;

    #[test]
    fn boilerplate_is_dropped() {
        let doc = extract(
            "t".into(),
            "<html><head><title>X</title><style>p{}</style></head><body><nav>Home About</nav>\
             <main><p>We keep your name.</p><script>var x;</script></main><footer>Copyright</footer></body></html>",
        );
        assert_eq!(doc.body, "We keep your name.");
    }

    #[test]
    fn headings_become_sections_with_links() {
        let doc = extract(
            "t".into(),
            "<h1>Policy</h1><h2>What we collect</h2><p>We keep your <b>name</b>. <a href=\"/more\">More information</a></p>\
             <h2>Contact</h2><p>Email us.</p>",
        );
        assert_eq!(doc.sections.len(), 2, "{:?}", doc.sections);
        assert_eq!(doc.sections[0].heading, "What we collect");
        assert_eq!(doc.sections[0].links[0].text, "More information");
        assert_eq!(doc.sections[0].links[0].target, "/more");
        assert_eq!(doc.slice(doc.sections[1].body), "Email us.");
        doc.validate().unwrap();
    }

    #[test]
    fn images_and_controls() {
        let doc = extract(
            "t".into(),
            "<p><img class=\"icon collect\" src=\"i.png\" alt=\"Collect icon\"> We share data. \
             <button>Opt out here</button> <input type=\"submit\" value=\"Opt in\"> <a href=\"#\">opt-out</a></p>",
        );
        assert_eq!(doc.images.len(), 1);
        assert_eq!(doc.images[0].role, "icon");
        assert_eq!(doc.images[0].alt, "Collect icon");
        let kinds: Vec<MarkerKind> = doc.interactive_markers.iter().map(|m| m.kind).collect();
        assert_eq!(kinds, vec![MarkerKind::OptOut, MarkerKind::OptIn, MarkerKind::OptOut]);
        for m in &doc.interactive_markers {
            assert!(doc.slice(m.span).to_lowercase().contains("opt"));
        }
        doc.validate().unwrap();
    }

    #[test]
    fn table_cells_are_spaced() {
        let doc = extract("t".into(), "<table><tr><td>Name</td><td>Kept</td></tr></table>");
        assert_eq!(doc.body, "Name Kept");
    }

    #[test]
    fn policy_link_discovery() {
        let page = "<footer><a href=\"/cookies\">Cookie Policy</a><a href=\"/privacy\">Privacy</a>\
                    <a href=\"/privacy-policy\">Privacy Policy</a></footer>";
        let link = discover_policy_link(page).unwrap();
        assert_eq!(link.target, "/privacy");
        assert_eq!(discover_policy_link("<a href=\"/x\">About us</a>"), None);
        let only = discover_policy_link("<a href=\"/pp\">Privacy Policy</a>").unwrap();
        assert_eq!(only.text, "Privacy Policy");
    }
}
