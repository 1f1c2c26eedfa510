//! Readability statistics: tokenization, syllables, complex words and the
//! Gunning Fog Index.
//!
//! The fog index is `0.4 * (words / sentences + 100 * complex / words)`,
//! an estimate of the years of schooling needed to follow a text on first
//! reading. A complex word has three or more syllables and is not excluded
//! by one of the classical exclusions in [`Exclusions`].

mod syllables;
mod tokenize;

pub use syllables::{count_syllables, SyllableOverrides};
pub use tokenize::{tokenize, tokenize_with, TokenizedText, WordKind, WordToken, ABBREVIATIONS};

use serde::Serialize;

/// Syllable count at which a word becomes complex.
pub const COMPLEX_SYLLABLES: u32 = 3;

/// Classical complex-word exclusions. All on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exclusions {
    /// Capitalized words that do not start their sentence.
    pub proper_nouns: bool,
    /// Hyphenated compounds whose parts each have fewer than three syllables.
    pub compounds: bool,
    /// Words that only reach three syllables through `-es`, `-ed` or `-ing`.
    pub inflections: bool,
}

impl Default for Exclusions {
    fn default() -> Self {
        Exclusions {
            proper_nouns: true,
            compounds: true,
            inflections: true,
        }
    }
}

impl Exclusions {
    pub const NONE: Exclusions = Exclusions {
        proper_nouns: false,
        compounds: false,
        inflections: false,
    };
}

/// Settings for [`compute_stats`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricSettings {
    pub exclusions: Exclusions,
    pub overrides: SyllableOverrides,
}

impl MetricSettings {
    pub fn with_exclusions(exclusions: Exclusions) -> Self {
        MetricSettings {
            exclusions,
            overrides: SyllableOverrides::default(),
        }
    }
}

/// Readability counts for a span of text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct TextStats {
    pub word_count: usize,
    pub sentence_count: usize,
    pub complex_word_count: usize,
    pub complex_ratio: f64,
    pub gfi: f64,
}

impl TextStats {
    /// Stats from raw counts, applying the fog formula.
    pub fn from_counts(word_count: usize, sentence_count: usize, complex_word_count: usize) -> Self {
        debug_assert!(complex_word_count <= word_count);
        let (complex_ratio, gfi) = if word_count > 0 && sentence_count > 0 {
            let w = word_count as f64;
            let ratio = complex_word_count as f64 / w;
            (ratio, gunning_fog(word_count, sentence_count, complex_word_count))
        } else if word_count > 0 {
            (complex_word_count as f64 / word_count as f64, 0.0)
        } else {
            (0.0, 0.0)
        };
        TextStats {
            word_count,
            sentence_count,
            complex_word_count,
            complex_ratio,
            gfi,
        }
    }

    /// Mean words per sentence, or 0 for an empty text.
    pub fn mean_sentence_length(&self) -> f64 {
        if self.sentence_count == 0 {
            0.0
        } else {
            self.word_count as f64 / self.sentence_count as f64
        }
    }

    /// Percentage of complex words, `100 * complex / words`.
    pub fn complex_percent(&self) -> f64 {
        complex_percent(self.complex_word_count, self.word_count)
    }
}

/// `0.4 * (words / sentences + 100 * complex / words)`; zero when degenerate.
pub fn gunning_fog(words: usize, sentences: usize, complex: usize) -> f64 {
    if words == 0 || sentences == 0 {
        return 0.0;
    }
    let w = words as f64;
    0.4 * (w / sentences as f64 + 100.0 * complex as f64 / w)
}

pub fn complex_percent(complex: usize, words: usize) -> f64 {
    if words == 0 {
        0.0
    } else {
        100.0 * complex as f64 / words as f64
    }
}

fn stem_syllables(lower: &str, suffix: &str) -> Option<u32> {
    let stem = lower.strip_suffix(suffix)?;
    if stem.chars().filter(|c| c.is_alphabetic()).count() < 2 {
        return None;
    }
    // "deleted" -> "delet" / "delete", "making" -> "mak" / "make".
    let restored = format!("{stem}e");
    let candidates = [stem.to_string(), restored];
    candidates.iter().map(|s| count_syllables(s)).max()
}

/// Whether `word` at sentence-relative `position` is a complex word.
pub fn classify_complex(word: &WordToken, position: usize, exclusions: &Exclusions) -> bool {
    if word.kind != WordKind::Word || word.syllables < COMPLEX_SYLLABLES {
        return false;
    }
    if exclusions.proper_nouns && word.capitalized && position > 0 {
        return false;
    }
    if exclusions.compounds && word.hyphenated {
        let parts_simple = word
            .lower
            .split('-')
            .filter(|p| !p.is_empty())
            .all(|p| count_syllables(p) < COMPLEX_SYLLABLES);
        if parts_simple {
            return false;
        }
    }
    if exclusions.inflections && !word.hyphenated {
        let base = word
            .lower
            .strip_suffix("'s")
            .or_else(|| word.lower.strip_suffix("’s"))
            .unwrap_or(&word.lower);
        let stem = ["es", "ed", "ing"].iter().find_map(|s| stem_syllables(base, s));
        if stem.is_some_and(|n| n < COMPLEX_SYLLABLES) {
            return false;
        }
    }
    true
}

/// Counts from an already tokenized text.
pub fn stats_from_tokens(tokens: &TokenizedText, exclusions: &Exclusions) -> TextStats {
    let complex = tokens
        .words
        .iter()
        .filter(|w| classify_complex(w, w.position, exclusions))
        .count();
    TextStats::from_counts(tokens.words.len(), tokens.sentences.len(), complex)
}

/// Tokenize `text` and compute its readability statistics.
pub fn compute_stats(text: &str, settings: &MetricSettings) -> TextStats {
    let tokens = tokenize_with(text, &settings.overrides);
    stats_from_tokens(&tokens, &settings.exclusions)
}
