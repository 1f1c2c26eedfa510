//! Loading policy documents from files, URLs and standard input.
//!
//! Format resolution for [`FormatHint::Auto`] is fixed: the file extension
//! (or URL path extension) decides first, then the response content type for
//! URLs, then content sniffing. Sniffing treats text whose first non-blank
//! character is `<` followed by a tag name as HTML, text with `#` headings or
//! `[text](target)` links as Markdown, and anything else as plain text.

mod builder;
mod fetch;
mod html;
mod markdown;
mod plain;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Duration;

use once_cell::sync::Lazy;
use regex::Regex;
use thiserror::Error;

use crate::document::{Document, SourceFormat};
use crate::textmetrics::tokenize;

pub use builder::marker_kind;
pub use fetch::{cache_path, Fetched};
pub use html::discover_policy_link;

/// Word count below which extraction is assumed to have failed.
pub const DEFAULT_MIN_WORDS: usize = 10;
pub const DEFAULT_USER_AGENT: &str = concat!("policylint/", env!("CARGO_PKG_VERSION"));
/// Environment variable naming the fetch cache directory.
pub const CACHE_DIR_ENV: &str = "POLICYLINT_CACHE_DIR";

static POLICY_LINK: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)\b(?:privacy|data protection)\b").unwrap());
static MD_HEADING: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?m)^#{1,6} \S").unwrap());
static MD_LINK: Lazy<Regex> = Lazy::new(|| Regex::new(r"!?\[[^\]\n]+\]\([^)\s]+\)").unwrap());
static HTML_START: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)^<(?:!doctype|!--|[a-zA-Z][a-zA-Z0-9]*[\s/>])").unwrap());

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    File,
    Url,
    Stdin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormatHint {
    #[default]
    Auto,
    Text,
    Markdown,
    Html,
}

impl std::str::FromStr for FormatHint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(FormatHint::Auto),
            "text" | "txt" => Ok(FormatHint::Text),
            "markdown" | "md" => Ok(FormatHint::Markdown),
            "html" | "htm" => Ok(FormatHint::Html),
            other => Err(format!("unknown format {other:?}; expected auto, text, markdown or html")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpec {
    pub kind: SourceKind,
    pub locator: String,
    pub format_hint: FormatHint,
}

impl SourceSpec {
    pub fn file(path: impl AsRef<Path>) -> Self {
        SourceSpec {
            kind: SourceKind::File,
            locator: path.as_ref().to_string_lossy().into_owned(),
            format_hint: FormatHint::Auto,
        }
    }

    pub fn url(url: impl Into<String>) -> Self {
        SourceSpec {
            kind: SourceKind::Url,
            locator: url.into(),
            format_hint: FormatHint::Auto,
        }
    }

    pub fn stdin() -> Self {
        SourceSpec {
            kind: SourceKind::Stdin,
            locator: "-".into(),
            format_hint: FormatHint::Auto,
        }
    }

    /// Interprets a command-line or manifest locator: `-` is stdin,
    /// `http(s)://` is a URL, anything else a path.
    pub fn parse(locator: &str) -> Self {
        let trimmed = locator.trim();
        if trimmed == "-" {
            Self::stdin()
        } else if trimmed.starts_with("http://") || trimmed.starts_with("https://") {
            Self::url(trimmed)
        } else {
            Self::file(trimmed)
        }
    }

    pub fn with_format(mut self, hint: FormatHint) -> Self {
        self.format_hint = hint;
        self
    }

    fn id(&self) -> String {
        match self.kind {
            SourceKind::Stdin => "<stdin>".into(),
            _ => self.locator.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FetchSettings {
    pub network: bool,
    pub timeout: Duration,
    pub max_bytes: u64,
    pub user_agent: String,
    pub cache_dir: Option<PathBuf>,
    pub min_words: usize,
}

impl Default for FetchSettings {
    fn default() -> Self {
        FetchSettings {
            network: true,
            timeout: Duration::from_secs(20),
            max_bytes: 5 * 1024 * 1024,
            user_agent: DEFAULT_USER_AGENT.into(),
            cache_dir: None,
            min_words: DEFAULT_MIN_WORDS,
        }
    }
}

impl FetchSettings {
    /// Defaults with the cache directory taken from the environment.
    pub fn from_env() -> Self {
        FetchSettings {
            cache_dir: std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
            ..Self::default()
        }
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {locator}: {reason}")]
    UnreadableSource { locator: String, reason: String },
    #[error("fetching {url} failed{}: {reason}", status.map(|s| format!(" with status {s}")).unwrap_or_default())]
    FetchFailed { url: String, status: Option<u16>, reason: String },
    #[error("{locator} yielded only {words} words (minimum {min}); extraction probably failed")]
    EmptyDocument { locator: String, words: usize, min: usize },
}

/// Loads and extracts one source.
pub fn load(src: &SourceSpec, settings: &FetchSettings) -> Result<Document, IngestError> {
    let id = src.id();
    let unreadable = |e: std::io::Error| IngestError::UnreadableSource {
        locator: id.clone(),
        reason: e.to_string(),
    };
    let (bytes, content_type) = match src.kind {
        SourceKind::File => {
            if src.locator.trim().is_empty() {
                return Err(unreadable(std::io::Error::other("empty path")));
            }
            (std::fs::read(&src.locator).map_err(unreadable)?, None)
        }
        SourceKind::Stdin => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(unreadable)?;
            (buf, None)
        }
        SourceKind::Url => {
            let fetched = fetch::get(&src.locator, settings)?;
            (fetched.body, fetched.content_type)
        }
    };
    let text = String::from_utf8_lossy(&bytes);
    let format = resolve_format(src, content_type.as_deref(), &text);
    let doc = extract(id, format, &text);
    check_words(doc, settings.min_words)
}

/// Loads several sources and joins them into one document, in order.
///
/// Useful for policies split over tabs or pages.
pub fn load_concatenated(srcs: &[SourceSpec], settings: &FetchSettings) -> Result<Document, IngestError> {
    let relaxed = FetchSettings {
        min_words: 0,
        ..settings.clone()
    };
    let docs = srcs.iter().map(|s| load(s, &relaxed)).collect::<Result<Vec<_>, _>>()?;
    let id = srcs.iter().map(SourceSpec::id).collect::<Vec<_>>().join("+");
    check_words(concatenate(id, docs), settings.min_words)
}

/// Fetches a URL without extracting it, honouring the cache and settings.
pub fn fetch_raw(url: &str, settings: &FetchSettings) -> Result<Fetched, IngestError> {
    fetch::get(url, settings)
}

/// Resolves a link target found on the page at `base`.
pub fn resolve_link(base: &str, href: &str) -> Result<String, url::ParseError> {
    Ok(url::Url::parse(base)?.join(href.trim())?.to_string())
}

/// Extracts a document from text already in memory.
pub fn extract(source_id: String, format: SourceFormat, text: &str) -> Document {
    match format {
        SourceFormat::Html => html::extract(source_id, text),
        SourceFormat::Markdown => markdown::extract(source_id, text),
        SourceFormat::Text => plain::extract(source_id, text),
    }
}

fn check_words(doc: Document, min: usize) -> Result<Document, IngestError> {
    let words = tokenize(&doc.body).words.len();
    if words < min {
        return Err(IngestError::EmptyDocument {
            locator: doc.source_id,
            words,
            min,
        });
    }
    Ok(doc)
}

/// Resolves the input format. See the module docs for the order.
pub fn resolve_format(src: &SourceSpec, content_type: Option<&str>, text: &str) -> SourceFormat {
    match src.format_hint {
        FormatHint::Text => return SourceFormat::Text,
        FormatHint::Markdown => return SourceFormat::Markdown,
        FormatHint::Html => return SourceFormat::Html,
        FormatHint::Auto => {}
    }
    let path = match src.kind {
        SourceKind::Url => url::Url::parse(&src.locator).map(|u| u.path().to_string()).unwrap_or_default(),
        _ => src.locator.clone(),
    };
    let ext = Path::new(&path).extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("html" | "htm" | "xhtml") => return SourceFormat::Html,
        Some("md" | "markdown") => return SourceFormat::Markdown,
        Some("txt" | "text") => return SourceFormat::Text,
        _ => {}
    }
    if let Some(ct) = content_type.map(str::to_ascii_lowercase) {
        if ct.contains("html") {
            return SourceFormat::Html;
        }
        if ct.contains("markdown") {
            return SourceFormat::Markdown;
        }
    }
    sniff(text)
}

/// Content-based format guess.
pub fn sniff(text: &str) -> SourceFormat {
    let head = text.trim_start_matches('\u{feff}').trim_start();
    if HTML_START.is_match(head) {
        SourceFormat::Html
    } else if MD_HEADING.is_match(text) || MD_LINK.is_match(text) {
        SourceFormat::Markdown
    } else {
        SourceFormat::Text
    }
}

/// Joins documents with a paragraph break, shifting every span.
pub fn concatenate(source_id: String, docs: Vec<Document>) -> Document {
    let mut out = Document::from_text(source_id, String::new());
    out.format = docs.first().map_or(SourceFormat::Text, |d| d.format);
    for doc in docs {
        if doc.body.is_empty() {
            continue;
        }
        if !out.body.is_empty() {
            out.body.push_str("\n\n");
        }
        let base = out.body.len();
        out.body.push_str(&doc.body);
        if doc.format != out.format && doc.format.supports_images() {
            out.format = doc.format;
        }
        for mut sec in doc.sections {
            sec.body = sec.body.offset(base);
            for l in &mut sec.links {
                l.span = l.span.offset(base);
            }
            out.sections.push(sec);
        }
        out.links.extend(doc.links.into_iter().map(|mut l| {
            l.span = l.span.offset(base);
            l
        }));
        out.images.extend(doc.images.into_iter().map(|mut i| {
            i.offset += base;
            i
        }));
        out.interactive_markers.extend(doc.interactive_markers.into_iter().map(|mut m| {
            m.span = m.span.offset(base);
            m
        }));
    }
    out
}
