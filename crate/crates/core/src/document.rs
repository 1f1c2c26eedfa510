//! The analyzed policy artifact.

use serde::Serialize;

use crate::span::Span;

/// Input format a document was extracted from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceFormat {
    Text,
    Markdown,
    Html,
}

impl SourceFormat {
    /// Whether the format can carry images at all.
    pub fn supports_images(self) -> bool {
        !matches!(self, SourceFormat::Text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Link {
    /// Anchor text as it appears in the body.
    pub text: String,
    pub target: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Image {
    pub alt: String,
    pub src: String,
    /// Free-form hint such as `icon` or `seal`, taken from class names.
    pub role: String,
    /// Body offset where the image appeared.
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerKind {
    OptIn,
    OptOut,
}

/// An opt-in or opt-out control found in the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Marker {
    pub kind: MarkerKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    pub heading: String,
    /// Body text following the heading, up to the next heading.
    pub body: Span,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Document {
    pub source_id: String,
    pub format: SourceFormat,
    pub body: String,
    pub sections: Vec<Section>,
    pub links: Vec<Link>,
    pub images: Vec<Image>,
    pub interactive_markers: Vec<Marker>,
}

impl Document {
    /// A document with no structure beyond its text.
    pub fn from_text(source_id: impl Into<String>, body: impl Into<String>) -> Self {
        Document {
            source_id: source_id.into(),
            format: SourceFormat::Text,
            body: body.into(),
            sections: Vec::new(),
            links: Vec::new(),
            images: Vec::new(),
            interactive_markers: Vec::new(),
        }
    }

    pub fn slice(&self, span: Span) -> &str {
        span.slice(&self.body)
    }

    /// Checks span bounds and section ordering.
    pub fn validate(&self) -> Result<(), String> {
        let len = self.body.len();
        let ok = |s: &Span| s.start <= s.end && s.end <= len && self.body.is_char_boundary(s.start) && self.body.is_char_boundary(s.end);
        for (i, sec) in self.sections.iter().enumerate() {
            if !ok(&sec.body) {
                return Err(format!("section {i} span out of bounds"));
            }
            if i > 0 && self.sections[i - 1].body.end > sec.body.start {
                return Err(format!("section {i} overlaps its predecessor"));
            }
            if sec.links.iter().any(|l| !sec.body.contains(&l.span)) {
                return Err(format!("section {i} has a link outside its body"));
            }
        }
        if let Some(l) = self.links.iter().find(|l| !ok(&l.span)) {
            return Err(format!("link {:?} out of bounds", l.text));
        }
        if let Some(m) = self.interactive_markers.iter().find(|m| !ok(&m.span)) {
            return Err(format!("marker at {:?} out of bounds", m.span));
        }
        if let Some(img) = self.images.iter().find(|i| i.offset > len) {
            return Err(format!("image {:?} out of bounds", img.alt));
        }
        Ok(())
    }
}
