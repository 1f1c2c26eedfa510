//! Heuristic English syllable counting.
//!
//! Counts groups of consecutive vowels (`a e i o u y`), drops a silent
//! trailing `e`, and restores one syllable for a consonant + `le` ending
//! ("table", "simple"). Every word has at least one syllable. Tokens that
//! carry digits (numbers, "3rd") count as a single syllable.

use std::collections::BTreeMap;

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Lowercase ASCII-folded letters of `word`, with a possessive `'s` removed.
fn letters(word: &str) -> String {
    let trimmed = word
        .strip_suffix("'s")
        .or_else(|| word.strip_suffix("’s"))
        .or_else(|| word.strip_suffix("'S"))
        .or_else(|| word.strip_suffix("’S"))
        .unwrap_or(word);
    trimmed
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(|c| c.to_lowercase())
        .map(fold_accent)
        .collect()
}

fn fold_accent(c: char) -> char {
    match c {
        'à' | 'á' | 'â' | 'ä' | 'ã' | 'å' => 'a',
        'è' | 'é' | 'ê' | 'ë' => 'e',
        'ì' | 'í' | 'î' | 'ï' => 'i',
        'ò' | 'ó' | 'ô' | 'ö' | 'õ' => 'o',
        'ù' | 'ú' | 'û' | 'ü' => 'u',
        'ÿ' | 'ý' => 'y',
        other => other,
    }
}

/// Syllable count for a single unhyphenated run of lowercase letters.
fn heuristic(word: &str) -> u32 {
    let chars: Vec<char> = word.chars().collect();
    if chars.is_empty() {
        return 1;
    }

    let mut groups = 0u32;
    let mut in_group = false;
    for &c in &chars {
        if is_vowel(c) {
            if !in_group {
                groups += 1;
            }
            in_group = true;
        } else {
            in_group = false;
        }
    }

    let n = chars.len();
    // The final `e` is silent only when it forms its own vowel group.
    if n >= 2 && chars[n - 1] == 'e' && !is_vowel(chars[n - 2]) && groups > 1 {
        groups -= 1;
    }
    if n >= 3 && chars[n - 1] == 'e' && chars[n - 2] == 'l' && !is_vowel(chars[n - 3]) {
        groups += 1;
    }

    groups.max(1)
}

/// Syllable count of a word token.
///
/// Hyphenated compounds count as the sum of their parts.
pub fn count_syllables(word: &str) -> u32 {
    if word.chars().any(|c| c.is_ascii_digit()) {
        return 1;
    }
    if word.contains('-') {
        return word
            .split('-')
            .filter(|p| !p.is_empty())
            .map(count_syllables)
            .sum::<u32>()
            .max(1);
    }
    heuristic(&letters(word))
}

/// Dictionary corrections applied before the heuristic.
///
/// Keys are lowercase word forms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SyllableOverrides {
    table: BTreeMap<String, u32>,
}

impl SyllableOverrides {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: &str, syllables: u32) {
        self.table.insert(word.to_lowercase(), syllables.max(1));
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn count(&self, word: &str) -> u32 {
        self.table
            .get(&word.to_lowercase())
            .copied()
            .unwrap_or_else(|| count_syllables(word))
    }
}

impl FromIterator<(String, u32)> for SyllableOverrides {
    fn from_iter<T: IntoIterator<Item = (String, u32)>>(iter: T) -> Self {
        let mut o = SyllableOverrides::new();
        for (w, n) in iter {
            o.insert(&w, n);
        }
        o
    }
}
