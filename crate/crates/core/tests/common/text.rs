//! Random English-like texts for property tests.

use proptest::prelude::*;
use proptest::sample::select;

const SIMPLE: &[&str] = &[
    "we", "keep", "your", "name", "data", "for", "a", "month", "you", "can", "ask", "us", "to", "delete", "it", "email",
    "the", "shop", "will", "send", "news", "and", "offers", "when", "sign", "up", "by", "post", "or", "phone", "safe",
];

/// Lowercase words of three or more syllables that no exclusion removes.
pub const COMPLEX: &[&str] = &[
    "information", "everybody", "government", "beautiful", "company", "important", "family", "history", "anybody",
    "personal", "privacy", "policy", "another", "consider",
];

const POLICY_SENTENCES: &[&str] = &[
    "We collect your name and email address.",
    "We use your email to send you receipts.",
    "We rely on your consent.",
    "We delete your data after two years.",
    "Contact us at help@shop.example with any questions.",
    "We profile users to rank offers.",
    "Opt out here",
    "We keep details about your health.",
    "Our data protection officer is Jane Smith.",
    "Notwithstanding contractual stipulations, organisational information is retained indefinitely.",
    "Call 01382 123 456 for help.",
    "You can read more on our website.",
];

fn sentence() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![4 => select(SIMPLE.to_vec()), 1 => select(COMPLEX.to_vec())],
        1..14,
    )
    .prop_map(|words| {
        let mut s = words.join(" ");
        s[..1].make_ascii_uppercase();
        s.push('.');
        s
    })
}

/// One to eight sentences of common words.
pub fn plain_text() -> impl Strategy<Value = String> {
    prop::collection::vec(sentence(), 1..8).prop_map(|s| s.join(" "))
}

/// Short policy-like passages mixing detector triggers and filler.
pub fn policy_text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop_oneof![select(POLICY_SENTENCES.to_vec()).prop_map(String::from), sentence()], 1..10)
        .prop_map(|s| s.join(" "))
}

pub fn complex_word() -> impl Strategy<Value = &'static str> {
    select(COMPLEX.to_vec())
}

/// Inserts `word` at the end of the final sentence, before its punctuation.
pub fn append_to_last_sentence(text: &str, word: &str) -> String {
    let trimmed = text.trim_end();
    let body = trimmed.trim_end_matches(['.', '!', '?']);
    format!("{body} {word}{}", &trimmed[body.len()..])
}
