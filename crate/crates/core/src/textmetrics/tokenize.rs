//! Sentence and word segmentation.
//!
//! Sentences end at `.`, `!` or `?` (runs allowed, trailing closing quotes
//! and brackets absorbed) when followed by whitespace and an uppercase letter,
//! or by the end of the text. A blank line also ends a sentence, so headings
//! and list items without terminal punctuation stand alone. A period directly
//! after a guarded abbreviation ("Mr.", "etc.") never ends a sentence.
//!
//! Words are maximal runs of letters and digits joined by internal
//! apostrophes or hyphens. URLs, email addresses, dotted abbreviations
//! ("e.g.") and numbers with separators are single tokens.

use once_cell::sync::Lazy;
use regex::Regex;
use serde::Serialize;

use super::syllables::SyllableOverrides;
use crate::span::Span;

/// Abbreviations whose trailing period does not end a sentence.
pub const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "etc", "vs", "inc", "ltd", "co", "corp",
    "no", "approx", "dept", "fig", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
    "oct", "nov", "dec",
];

static TOKEN: Lazy<Regex> = Lazy::new(|| {
    Regex::new(concat!(
        r"(?P<url>(?i:https?://|www\.)[^\s<>()\[\]{}]+)",
        r"|(?P<email>[A-Za-z0-9][A-Za-z0-9._%+\-]*@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)+)",
        r"|(?P<abbr>(?:\p{L}\.){2,})",
        r"|(?P<number>\d+(?:[.,:/]\d+)*(?:\p{L}+)?)",
        r"|(?P<word>[\p{L}\p{N}]+(?:(?:['’]|-)[\p{L}\p{N}]+)*)",
    ))
    .expect("token pattern")
});

/// What a word token looks like on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordKind {
    Word,
    Number,
    Url,
    Email,
    Abbreviation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordToken {
    pub span: Span,
    pub lower: String,
    pub kind: WordKind,
    pub syllables: u32,
    /// Index of the containing sentence.
    pub sentence: usize,
    /// Position within the containing sentence, zero-based.
    pub position: usize,
    /// Starts with an uppercase letter.
    pub capitalized: bool,
    /// Capitalized and not the first word of its sentence.
    pub proper_noun: bool,
    pub hyphenated: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TokenizedText {
    pub sentences: Vec<Span>,
    pub words: Vec<WordToken>,
}

impl TokenizedText {
    /// Words of sentence `index`.
    pub fn sentence_words(&self, index: usize) -> &[WordToken] {
        let start = self.words.partition_point(|w| w.sentence < index);
        let end = self.words.partition_point(|w| w.sentence <= index);
        &self.words[start..end]
    }

    /// Index of the sentence containing byte `offset`, if any.
    pub fn sentence_at(&self, offset: usize) -> Option<usize> {
        let i = self.sentences.partition_point(|s| s.end <= offset);
        self.sentences
            .get(i)
            .filter(|s| s.start <= offset && offset < s.end)
            .map(|_| i)
    }

    /// Word count per sentence, in order.
    pub fn sentence_lengths(&self) -> Vec<usize> {
        let mut lengths = vec![0usize; self.sentences.len()];
        for w in &self.words {
            lengths[w.sentence] += 1;
        }
        lengths
    }
}

struct RawToken {
    span: Span,
    kind: WordKind,
}

fn raw_tokens(text: &str) -> Vec<RawToken> {
    let mut out = Vec::new();
    for caps in TOKEN.captures_iter(text) {
        let (m, kind) = if let Some(m) = caps.name("url") {
            (m, WordKind::Url)
        } else if let Some(m) = caps.name("email") {
            (m, WordKind::Email)
        } else if let Some(m) = caps.name("abbr") {
            (m, WordKind::Abbreviation)
        } else if let Some(m) = caps.name("number") {
            (m, WordKind::Number)
        } else if let Some(m) = caps.name("word") {
            (m, WordKind::Word)
        } else {
            continue;
        };
        let mut end = m.end();
        if kind == WordKind::Url {
            // Trailing sentence punctuation belongs to the sentence.
            let trimmed = m.as_str().trim_end_matches(['.', ',', ';', ':', '!', '?', '\'', '"', '’', '”']);
            end = m.start() + trimmed.len();
        }
        out.push(RawToken {
            span: Span::new(m.start(), end),
            kind,
        });
    }
    out
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '’' | '”' | '»')
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '{' | '‘' | '“' | '«')
}

/// Byte offsets where sentences end (exclusive).
fn sentence_cuts(text: &str, tokens: &[RawToken]) -> Vec<usize> {
    let bytes = text.as_bytes();
    let mut cuts = Vec::new();
    let mut tok = 0usize;
    let mut i = 0usize;

    while i < text.len() {
        while tok < tokens.len() && tokens[tok].span.end <= i {
            tok += 1;
        }
        // Skip over token interiors (URLs, emails, numbers, "e.g.").
        if tok < tokens.len() && tokens[tok].span.start <= i && i < tokens[tok].span.end {
            i = tokens[tok].span.end;
            continue;
        }

        let c = text[i..].chars().next().expect("char boundary");

        if c == '\n' {
            // Blank line: newline, optional horizontal space, newline.
            let rest = &text[i + 1..];
            let ws: usize = rest
                .chars()
                .take_while(|c| *c == ' ' || *c == '\t' || *c == '\r')
                .map(char::len_utf8)
                .sum();
            if rest[ws..].starts_with('\n') {
                cuts.push(i);
                i += 1 + ws + 1;
                continue;
            }
        }

        if matches!(c, '.' | '!' | '?') {
            let term_start = i;
            let mut j = i;
            while j < text.len() && matches!(bytes[j], b'.' | b'!' | b'?') {
                j += 1;
            }
            let mut end = j;
            for ch in text[j..].chars() {
                if is_closing(ch) {
                    end += ch.len_utf8();
                } else {
                    break;
                }
            }

            let after = &text[end..];
            let boundary = if after.trim().is_empty() {
                true
            } else if after.starts_with(char::is_whitespace) {
                let next = after
                    .trim_start()
                    .chars()
                    .find(|c| !is_opening(*c));
                next.is_some_and(|c| c.is_uppercase())
            } else {
                false
            };

            let guarded = c == '.' && j - term_start == 1 && preceded_by_abbreviation(text, term_start);
            if boundary && !guarded {
                cuts.push(end);
            }
            i = end;
            continue;
        }

        i += c.len_utf8();
    }
    cuts
}

fn preceded_by_abbreviation(text: &str, dot: usize) -> bool {
    let before = &text[..dot];
    let word: String = before
        .chars()
        .rev()
        .take_while(|c| c.is_alphabetic())
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    if word.is_empty() {
        return false;
    }
    let lower = word.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

/// Segment `text` into sentences and words, with default syllable counts.
pub fn tokenize(text: &str) -> TokenizedText {
    tokenize_with(text, &SyllableOverrides::default())
}

/// Segment `text`, consulting `overrides` for syllable counts.
pub fn tokenize_with(text: &str, overrides: &SyllableOverrides) -> TokenizedText {
    let raw = raw_tokens(text);
    let cuts = sentence_cuts(text, &raw);

    let mut sentences = Vec::new();
    let mut words = Vec::new();
    let mut start = 0usize;
    let mut tok = 0usize;

    let mut bounds = cuts;
    bounds.push(text.len());
    for cut in bounds {
        if cut < start {
            continue;
        }
        let seg = &text[start..cut];
        let lead = seg.len() - seg.trim_start().len();
        let trail = seg.len() - seg.trim_end().len();
        let span = Span::new(start + lead, (cut - trail).max(start + lead));

        let first = tok;
        while tok < raw.len() && raw[tok].span.end <= cut {
            tok += 1;
        }
        if tok > first {
            let index = sentences.len();
            for (position, r) in raw[first..tok].iter().enumerate() {
                words.push(make_word(text, r, index, position, overrides));
            }
            sentences.push(span);
        }
        start = cut;
    }

    TokenizedText { sentences, words }
}

fn make_word(
    text: &str,
    raw: &RawToken,
    sentence: usize,
    position: usize,
    overrides: &SyllableOverrides,
) -> WordToken {
    let surface = raw.span.slice(text);
    let syllables = match raw.kind {
        WordKind::Word => overrides.count(surface),
        _ => 1,
    };
    let capitalized = raw.kind == WordKind::Word && surface.chars().next().is_some_and(char::is_uppercase);
    WordToken {
        span: raw.span,
        lower: surface.to_lowercase(),
        kind: raw.kind,
        syllables,
        sentence,
        position,
        capitalized,
        proper_noun: capitalized && position > 0,
        hyphenated: raw.kind == WordKind::Word && surface.contains('-'),
    }
}
