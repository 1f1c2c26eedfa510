//! Rule definitions as data, and the rules-file grammar.
//!
//! ```text
//! # comment
//! [GDPR4]
//! enabled = true
//! pattern duration = \buntil\b
//! sentence_window = 1
//!
//! [settings]
//! exclude_proper_nouns = true
//! ```
//!
//! A block starts with `[RULE-ID]` or `[settings]`. Inside a rule block,
//! `pattern <concept> = <regex>` lines add a pattern to a concept (repeat the
//! line for more patterns), `enabled = true|false` toggles the rule, and
//! `<threshold> = <number>` sets a numeric parameter. Patterns are
//! case-insensitive unless they opt out with `(?-i)`.
//!
//! When a file is applied on top of another rule set, every concept it names
//! replaces that concept's patterns wholesale; thresholds and flags replace
//! individually. Anything not mentioned keeps its previous value.

use std::fmt;
use std::str::FromStr;

use once_cell::sync::Lazy;
use regex::{Regex, RegexBuilder};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::textmetrics::Exclusions;

/// The embedded default rules, in canonical dump form.
pub const DEFAULT_RULES: &str = include_str!("default_rules.txt");

const HEADER: &str = "# policylint rules v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Gdpr1,
    Gdpr2,
    Gdpr3,
    Gdpr4,
    Gdpr5,
    Gdpr6,
    UgA,
    UgB,
    UgC,
    UgD,
    UgE,
    UgF,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::Gdpr1,
        RuleId::Gdpr2,
        RuleId::Gdpr3,
        RuleId::Gdpr4,
        RuleId::Gdpr5,
        RuleId::Gdpr6,
        RuleId::UgA,
        RuleId::UgB,
        RuleId::UgC,
        RuleId::UgD,
        RuleId::UgE,
        RuleId::UgF,
    ];

    pub const GDPR: [RuleId; 6] = [
        RuleId::Gdpr1,
        RuleId::Gdpr2,
        RuleId::Gdpr3,
        RuleId::Gdpr4,
        RuleId::Gdpr5,
        RuleId::Gdpr6,
    ];

    pub const GUIDELINES: [RuleId; 6] = [
        RuleId::UgA,
        RuleId::UgB,
        RuleId::UgC,
        RuleId::UgD,
        RuleId::UgE,
        RuleId::UgF,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Gdpr1 => "GDPR1",
            RuleId::Gdpr2 => "GDPR2",
            RuleId::Gdpr3 => "GDPR3",
            RuleId::Gdpr4 => "GDPR4",
            RuleId::Gdpr5 => "GDPR5",
            RuleId::Gdpr6 => "GDPR6",
            RuleId::UgA => "UG-A",
            RuleId::UgB => "UG-B",
            RuleId::UgC => "UG-C",
            RuleId::UgD => "UG-D",
            RuleId::UgE => "UG-E",
            RuleId::UgF => "UG-F",
        }
    }

    pub fn is_gdpr(self) -> bool {
        RuleId::GDPR.contains(&self)
    }

    /// Concepts the rule reads, in dump order.
    fn concepts(self) -> &'static [&'static str] {
        match self {
            RuleId::Gdpr1 => &["collection_verb", "personal_data"],
            RuleId::Gdpr2 => &["use_verb", "purpose_connective"],
            RuleId::Gdpr3 => &[
                "consent",
                "contract",
                "legal_obligation",
                "vital_interests",
                "public_interest",
                "legitimate_interest",
                "opt_in",
                "opt_out",
                "profiling",
                "sensitive_data",
                "collection_verb",
            ],
            RuleId::Gdpr4 => &["retention_verb", "duration"],
            RuleId::Gdpr5 => &[
                "email",
                "postal",
                "phone",
                "contact_phrase",
                "dpo",
                "timescale",
                "request",
            ],
            RuleId::Gdpr6 | RuleId::UgA => &[],
            RuleId::UgB => &["pronoun"],
            RuleId::UgC => &["opt_in", "opt_out"],
            RuleId::UgD => &["seal", "security", "phone", "enforcement"],
            RuleId::UgE => &["more_info"],
            RuleId::UgF => &["acronym"],
        }
    }

    /// Threshold names the rule reads, in dump order.
    fn threshold_names(self) -> &'static [&'static str] {
        match self {
            RuleId::Gdpr1 | RuleId::Gdpr2 | RuleId::Gdpr4 | RuleId::Gdpr5 => &["sentence_window"],
            RuleId::Gdpr3 => &["sentence_window", "min_bases_sensitive"],
            RuleId::Gdpr6 => &["gfi_max"],
            RuleId::UgB => &["words_per_pronoun"],
            RuleId::UgE => &["max_section_words"],
            RuleId::UgF => &["mean_sentence_words", "max_sentence_words"],
            RuleId::UgA | RuleId::UgC | RuleId::UgD => &[],
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown rule id `{s}`"))
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A compiled pattern together with its source text.
#[derive(Debug, Clone)]
pub struct Pattern {
    source: String,
    regex: Regex,
}

impl Pattern {
    pub fn new(source: &str) -> Result<Self, regex::Error> {
        let regex = RegexBuilder::new(source).case_insensitive(true).build()?;
        Ok(Pattern {
            source: source.to_string(),
            regex,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn regex(&self) -> &Regex {
        &self.regex
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternSet {
    pub concept: &'static str,
    pub patterns: Vec<Pattern>,
}

/// One rule: its patterns per concept and its numeric parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSpec {
    pub rule_id: RuleId,
    pub enabled: bool,
    pub pattern_sets: Vec<PatternSet>,
    pub thresholds: Vec<(&'static str, f64)>,
}

impl RuleSpec {
    fn skeleton(rule_id: RuleId) -> Self {
        RuleSpec {
            rule_id,
            enabled: true,
            pattern_sets: rule_id
                .concepts()
                .iter()
                .map(|c| PatternSet {
                    concept: c,
                    patterns: Vec::new(),
                })
                .collect(),
            thresholds: Vec::new(),
        }
    }

    pub fn patterns(&self, concept: &str) -> &[Pattern] {
        self.pattern_sets
            .iter()
            .find(|p| p.concept == concept)
            .map(|p| p.patterns.as_slice())
            .unwrap_or(&[])
    }

    pub fn threshold(&self, name: &str) -> Option<f64> {
        self.thresholds.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    fn set_threshold(&mut self, name: &'static str, value: f64) {
        match self.thresholds.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => {
                self.thresholds.push((name, value));
                let order = self.rule_id.threshold_names();
                self.thresholds
                    .sort_by_key(|(n, _)| order.iter().position(|o| o == n).unwrap_or(usize::MAX));
            }
        }
    }
}

/// The effective rule catalog plus complex-word exclusion settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet {
    rules: Vec<RuleSpec>,
    pub exclusions: Exclusions,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct RulesError {
    pub line: usize,
    pub message: String,
}

impl RulesError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        RulesError {
            line,
            message: message.into(),
        }
    }
}

enum Block {
    Rule(RuleId),
    Settings,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::defaults()
    }
}

impl RuleSet {
    fn empty() -> Self {
        RuleSet {
            rules: RuleId::ALL.iter().map(|id| RuleSpec::skeleton(*id)).collect(),
            exclusions: Exclusions::default(),
        }
    }

    /// The embedded default catalog.
    pub fn defaults() -> Self {
        static DEFAULTS: Lazy<RuleSet> = Lazy::new(|| {
            let mut set = RuleSet::empty();
            set.apply(DEFAULT_RULES).expect("embedded rules parse");
            set.validate().expect("embedded rules are complete");
            set
        });
        DEFAULTS.clone()
    }

    /// Defaults with the overrides in `text` applied.
    pub fn with_overrides(text: &str) -> Result<Self, RulesError> {
        let mut set = RuleSet::defaults();
        set.apply(text)?;
        set.validate()?;
        Ok(set)
    }

    pub fn rule(&self, id: RuleId) -> &RuleSpec {
        self.rules
            .iter()
            .find(|r| r.rule_id == id)
            .expect("every rule id has a spec")
    }

    fn rule_mut(&mut self, id: RuleId) -> &mut RuleSpec {
        self.rules
            .iter_mut()
            .find(|r| r.rule_id == id)
            .expect("every rule id has a spec")
    }

    pub fn rules(&self) -> &[RuleSpec] {
        &self.rules
    }

    pub fn threshold(&self, id: RuleId, name: &str) -> f64 {
        self.rule(id)
            .threshold(name)
            .unwrap_or_else(|| panic!("{id} has no threshold `{name}`"))
    }

    /// Every enabled rule must have patterns for every concept it reads.
    pub fn validate(&self) -> Result<(), RulesError> {
        for rule in self.rules.iter().filter(|r| r.enabled) {
            if let Some(set) = rule.pattern_sets.iter().find(|p| p.patterns.is_empty()) {
                return Err(RulesError::new(
                    0,
                    format!("{} is enabled but concept `{}` has no patterns", rule.rule_id, set.concept),
                ));
            }
            for name in rule.rule_id.threshold_names() {
                if rule.threshold(name).is_none() {
                    return Err(RulesError::new(0, format!("{} is missing threshold `{name}`", rule.rule_id)));
                }
            }
        }
        Ok(())
    }

    /// Apply a rules file on top of this set.
    pub fn apply(&mut self, text: &str) -> Result<(), RulesError> {
        let mut block: Option<Block> = None;
        // Concepts already replaced within the current block.
        let mut replaced: Vec<&'static str> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }

            if let Some(inner) = line.strip_prefix('[') {
                let name = inner
                    .strip_suffix(']')
                    .ok_or_else(|| RulesError::new(line_no, "unterminated block header"))?
                    .trim();
                block = Some(if name.eq_ignore_ascii_case("settings") {
                    Block::Settings
                } else {
                    Block::Rule(name.parse().map_err(|e: String| RulesError::new(line_no, e))?)
                });
                replaced.clear();
                continue;
            }

            let Some(current) = &block else {
                return Err(RulesError::new(line_no, "entry outside of a block"));
            };

            match current {
                Block::Settings => {
                    let (key, value) = split_assignment(line, line_no)?;
                    let flag = parse_bool(value, line_no)?;
                    match key {
                        "exclude_proper_nouns" => self.exclusions.proper_nouns = flag,
                        "exclude_compounds" => self.exclusions.compounds = flag,
                        "exclude_inflections" => self.exclusions.inflections = flag,
                        other => return Err(RulesError::new(line_no, format!("unknown setting `{other}`"))),
                    }
                }
                Block::Rule(id) => {
                    let id = *id;
                    if let Some(rest) = line.strip_prefix("pattern ") {
                        let (name, source) = split_assignment(rest, line_no)?;
                        let concept = id
                            .concepts()
                            .iter()
                            .find(|c| **c == name)
                            .copied()
                            .ok_or_else(|| RulesError::new(line_no, format!("{id} has no concept `{name}`")))?;
                        if source.is_empty() {
                            return Err(RulesError::new(line_no, "empty pattern"));
                        }
                        let pattern = Pattern::new(source)
                            .map_err(|e| RulesError::new(line_no, format!("invalid pattern: {e}")))?;
                        let rule = self.rule_mut(id);
                        let set = rule
                            .pattern_sets
                            .iter_mut()
                            .find(|p| p.concept == concept)
                            .expect("skeleton has every concept");
                        if !replaced.contains(&concept) {
                            set.patterns.clear();
                            replaced.push(concept);
                        }
                        set.patterns.push(pattern);
                    } else {
                        let (key, value) = split_assignment(line, line_no)?;
                        if key == "enabled" {
                            self.rule_mut(id).enabled = parse_bool(value, line_no)?;
                        } else {
                            let name = id
                                .threshold_names()
                                .iter()
                                .find(|n| **n == key)
                                .copied()
                                .ok_or_else(|| RulesError::new(line_no, format!("{id} has no threshold `{key}`")))?;
                            let number: f64 = value
                                .parse()
                                .ok()
                                .filter(|v: &f64| v.is_finite() && *v >= 0.0)
                                .ok_or_else(|| {
                                    RulesError::new(line_no, format!("threshold `{key}` needs a non-negative number"))
                                })?;
                            self.rule_mut(id).set_threshold(name, number);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The effective rules in rules-file grammar.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        for rule in &self.rules {
            out.push('\n');
            out.push_str(&format!("[{}]\n", rule.rule_id));
            out.push_str(&format!("enabled = {}\n", rule.enabled));
            for set in &rule.pattern_sets {
                for p in &set.patterns {
                    out.push_str(&format!("pattern {} = {}\n", set.concept, p.source()));
                }
            }
            for (name, value) in &rule.thresholds {
                out.push_str(&format!("{name} = {value}\n"));
            }
        }
        out.push_str("\n[settings]\n");
        out.push_str(&format!("exclude_proper_nouns = {}\n", self.exclusions.proper_nouns));
        out.push_str(&format!("exclude_compounds = {}\n", self.exclusions.compounds));
        out.push_str(&format!("exclude_inflections = {}\n", self.exclusions.inflections));
        out
    }
}

fn split_assignment(line: &str, line_no: usize) -> Result<(&str, &str), RulesError> {
    let (key, value) = line
        .split_once('=')
        .ok_or_else(|| RulesError::new(line_no, "expected `name = value`"))?;
    let key = key.trim();
    if key.is_empty() || key.contains(char::is_whitespace) {
        return Err(RulesError::new(line_no, format!("malformed name `{key}`")));
    }
    Ok((key, value.trim()))
}

fn parse_bool(value: &str, line_no: usize) -> Result<bool, RulesError> {
    match value {
        "true" | "on" | "yes" => Ok(true),
        "false" | "off" | "no" => Ok(false),
        other => Err(RulesError::new(line_no, format!("expected true or false, got `{other}`"))),
    }
}
