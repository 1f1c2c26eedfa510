//! Markdown and HTML output.
//!
//! Both renderings carry the same text; HTML only adds boxes and styling.
//! Extracting either one with [`crate::ingest`] yields the same body.

use std::fmt::Write;

use super::{control_label, RenderedPolicy, RenderedSection, MORE_INFO_LABEL};
use crate::document::MarkerKind;

/// Where icons live and how section boxes look.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theme {
    /// Directory or URL prefix that icon ids resolve against.
    pub icon_dir: String,
    pub icon_ext: String,
    pub background: String,
}

impl Default for Theme {
    fn default() -> Self {
        Theme {
            icon_dir: "icons".into(),
            icon_ext: "svg".into(),
            background: "#eeeeee".into(),
        }
    }
}

impl Theme {
    pub fn icon_src(&self, icon: &str) -> String {
        let dir = self.icon_dir.trim_end_matches('/');
        if dir.is_empty() {
            format!("{icon}.{}", self.icon_ext)
        } else {
            format!("{dir}/{icon}.{}", self.icon_ext)
        }
    }
}

/// Backslash-escapes characters Markdown would treat as syntax.
pub fn escape_markdown(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, c) in text.chars().enumerate() {
        let leading = i == 0 && matches!(c, '-' | '+' | '=' | '>');
        if leading || matches!(c, '\\' | '`' | '*' | '_' | '[' | ']' | '<' | '>' | '#' | '!' | '|' | '&' | '~') {
            out.push('\\');
        }
        out.push(c);
    }
    // "1. text" at the start of a paragraph would become a list item.
    if let Some(pos) = out.find(['.', ')']) {
        if pos > 0 && out[..pos].chars().all(|c| c.is_ascii_digit()) && out[pos + 1..].starts_with(' ') {
            out.insert(pos, '\\');
        }
    }
    out
}

pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

/// Link destinations go in angle brackets so spaces and parentheses survive.
fn md_dest(url: &str) -> String {
    format!("<{}>", url.replace('<', "%3C").replace('>', "%3E"))
}

fn control_anchor(kind: MarkerKind) -> &'static str {
    match kind {
        MarkerKind::OptIn => "opt-in",
        MarkerKind::OptOut => "opt-out",
    }
}

fn icon_alt(section: &RenderedSection) -> String {
    format!("{} icon", section.title)
}

pub(super) fn markdown(policy: &RenderedPolicy, theme: &Theme) -> String {
    let mut out = String::new();
    writeln!(out, "# {}\n", escape_markdown(&policy.title)).unwrap();
    for s in &policy.sections {
        writeln!(out, "## {}\n", escape_markdown(s.title)).unwrap();
        writeln!(out, "![{}]({} \"icon\")\n", escape_markdown(&icon_alt(s)), md_dest(&theme.icon_src(s.icon))).unwrap();
        for p in &s.paragraphs {
            writeln!(out, "{}\n", escape_markdown(p)).unwrap();
        }
        for kind in &s.controls {
            writeln!(out, "[{}](#{}-{})\n", control_label(*kind), control_anchor(*kind), s.id).unwrap();
        }
        if let Some(seal) = &s.seal {
            writeln!(out, "![{}]({} \"seal\")\n", escape_markdown(&seal.alt), md_dest(&seal.src)).unwrap();
        }
        writeln!(out, "[{MORE_INFO_LABEL}]({})\n", md_dest(&s.more_info)).unwrap();
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    out
}

pub(super) fn html(policy: &RenderedPolicy, theme: &Theme) -> String {
    let mut out = String::new();
    let title = escape_html(&policy.title);
    writeln!(
        out,
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>{title}</title>\n<style>\n\
         .policy-section {{ border: 1px solid #999999; background: {bg}; padding: 0.75em 1em; margin: 1em 0; max-width: 40em; }}\n\
         .policy-section h2 {{ margin-top: 0; }}\n\
         .policy-section img.icon {{ width: 2em; height: 2em; float: left; margin-right: 0.75em; }}\n\
         .policy-section img.seal {{ height: 4em; }}\n\
         .policy-section .control {{ font-weight: bold; }}\n\
         </style>\n</head>\n<body>\n<main>\n<h1>{title}</h1>",
        bg = escape_html(&theme.background),
    )
    .unwrap();
    for s in &policy.sections {
        writeln!(out, "<section class=\"policy-section\" id=\"{}\">", s.id).unwrap();
        writeln!(out, "<h2>{}</h2>", escape_html(s.title)).unwrap();
        writeln!(
            out,
            "<img class=\"icon\" src=\"{}\" alt=\"{}\">",
            escape_html(&theme.icon_src(s.icon)),
            escape_html(&icon_alt(s))
        )
        .unwrap();
        for p in &s.paragraphs {
            writeln!(out, "<p>{}</p>", escape_html(p)).unwrap();
        }
        for kind in &s.controls {
            writeln!(
                out,
                "<p><button type=\"button\" class=\"control\" id=\"{}-{}\">{}</button></p>",
                control_anchor(*kind),
                s.id,
                control_label(*kind)
            )
            .unwrap();
        }
        if let Some(seal) = &s.seal {
            writeln!(out, "<img class=\"seal\" src=\"{}\" alt=\"{}\">", escape_html(&seal.src), escape_html(&seal.alt)).unwrap();
        }
        writeln!(out, "<p><a href=\"{}\">{MORE_INFO_LABEL}</a></p>", escape_html(&s.more_info)).unwrap();
        writeln!(out, "</section>").unwrap();
    }
    out.push_str("</main>\n</body>\n</html>\n");
    out
}
