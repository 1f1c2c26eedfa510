//! Short, structured policy generation from a company profile.
//!
//! A policy has six boxed sections in a fixed order, one per customer-facing
//! obligation: what is collected, why, on what basis it is processed, how
//! long it is kept, who to contact, and how it is kept safe. Each section
//! carries an icon, at most 60 words and a "More information" link.
//! Generation is all-or-nothing: if any section or the assembled document
//! fails its checks, nothing is returned.

mod config;
mod render;

use std::fmt;

use once_cell::sync::Lazy;
use regex::Regex;
use thiserror::Error;

pub use config::{Contact, PolicyConfig, Purpose, Seal, DEFAULT_ENFORCEMENT, DEFAULT_SECURITY};
pub use render::{escape_html, escape_markdown, Theme};

use crate::document::{MarkerKind, SourceFormat};
use crate::report::Verdict;
use crate::ruleset::{analyze_default, RuleId, RuleSet};
use crate::textmetrics::{compute_stats, MetricSettings, TextStats};

/// Section ids in template order.
pub const SECTION_IDS: [&str; 6] = ["collect", "purpose", "processing", "retention", "contact", "trust"];
pub const SECTION_GFI_MAX: f64 = 13.0;
pub const SECTION_WORD_CAP: usize = 60;
pub const MORE_INFO_LABEL: &str = "More information";

static RULES: Lazy<RuleSet> = Lazy::new(RuleSet::defaults);
static EMAIL: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"^[A-Za-z0-9][A-Za-z0-9._%+\-]*@[A-Za-z0-9\-]+(?:\.[A-Za-z0-9\-]+)+$").unwrap());

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    /// A section id, a config field, or `document`.
    pub target: String,
    pub message: String,
    pub stats: Option<TextStats>,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.target, self.message)
    }
}

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation failed:\n{}", .0.iter().map(|p| format!("  {p}")).collect::<Vec<_>>().join("\n"))]
    ValidationFailed(Vec<Problem>),
}

/// Readability check for one section's visible text.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionCheck {
    pub stats: TextStats,
    pub gfi_ok: bool,
    pub words_ok: bool,
}

impl SectionCheck {
    pub fn passed(&self) -> bool {
        self.gfi_ok && self.words_ok
    }
}

/// Passes when the fog index is at most 13 and the text has at most 60 words.
pub fn validate_section_text(text: &str) -> SectionCheck {
    let stats = compute_stats(text, &MetricSettings::default());
    SectionCheck {
        stats,
        gfi_ok: stats.gfi <= SECTION_GFI_MAX,
        words_ok: stats.word_count <= SECTION_WORD_CAP,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderedSection {
    pub id: &'static str,
    pub title: &'static str,
    pub icon: &'static str,
    pub paragraphs: Vec<String>,
    pub controls: Vec<MarkerKind>,
    pub more_info: String,
    pub seal: Option<Seal>,
}

pub fn control_label(kind: MarkerKind) -> &'static str {
    match kind {
        MarkerKind::OptIn => "Opt in here",
        MarkerKind::OptOut => "Opt out here",
    }
}

impl RenderedSection {
    /// The instantiated sentences, without control labels or the link.
    pub fn prose(&self) -> String {
        self.paragraphs.join("\n\n")
    }

    /// Readability of the prose and length of the whole visible text.
    ///
    /// The fog index is taken over [`Self::prose`]; the word cap applies to
    /// [`Self::text`], which is what the section box displays.
    pub fn check(&self) -> SectionCheck {
        let prose = validate_section_text(&self.prose());
        let full = validate_section_text(&self.text());
        SectionCheck {
            stats: prose.stats,
            gfi_ok: prose.gfi_ok,
            words_ok: full.words_ok,
        }
    }

    /// The section's visible text as a reader sees it.
    pub fn text(&self) -> String {
        let mut blocks: Vec<&str> = self.paragraphs.iter().map(String::as_str).collect();
        blocks.extend(self.controls.iter().map(|k| control_label(*k)));
        blocks.push(MORE_INFO_LABEL);
        blocks.join("\n\n")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderedPolicy {
    pub title: String,
    pub sections: Vec<RenderedSection>,
}

impl RenderedPolicy {
    pub fn to_markdown(&self, theme: &Theme) -> String {
        render::markdown(self, theme)
    }

    pub fn to_html(&self, theme: &Theme) -> String {
        render::html(self, theme)
    }

    pub fn section(&self, id: &str) -> Option<&RenderedSection> {
        self.sections.iter().find(|s| s.id == id)
    }
}

fn sentence(text: &str) -> String {
    let t = text.trim();
    if t.ends_with(['.', '!', '?']) {
        t.to_string()
    } else {
        format!("{t}.")
    }
}

/// "a", "a and b", "a, b, and c".
fn join_list(items: &[&str]) -> String {
    match items {
        [] => String::new(),
        [one] => one.to_string(),
        [a, b] => format!("{a} and {b}"),
        [init @ .., last] => format!("{}, and {last}", init.join(", ")),
    }
}

fn matches_any(id: RuleId, concept: &str, text: &str) -> bool {
    RULES.rule(id).patterns(concept).iter().any(|p| p.regex().is_match(text))
}

fn plausible_phone(phone: &str) -> bool {
    let digits = phone.chars().filter(char::is_ascii_digit).count();
    (7..=15).contains(&digits)
        && RULES
            .rule(RuleId::Gdpr5)
            .patterns("phone")
            .iter()
            .any(|p| p.regex().find(phone).is_some_and(|m| m.start() == 0 && m.end() == phone.len()))
}

impl PolicyConfig {
    /// Checks the config invariants; every violation is reported.
    pub fn problems(&self) -> Vec<Problem> {
        let mut out = Vec::new();
        let mut bad = |target: &str, message: String| {
            out.push(Problem {
                target: target.into(),
                message,
                stats: None,
            })
        };
        if self.company_name.trim().is_empty() {
            bad("company_name", "company name is required".into());
        }
        if self.data_items.is_empty() {
            bad("data_item", "at least one data item is required".into());
        }
        if self.data_items.iter().any(|d| d.trim().is_empty()) {
            bad("data_item", "data items must not be empty".into());
        }
        if !EMAIL.is_match(self.contact.email.trim()) {
            bad("contact_email", format!("{:?} is not a valid email address", self.contact.email));
        }
        if !matches_any(RuleId::Gdpr4, "duration", &self.retention_statement) {
            bad(
                "retention",
                format!("{:?} states no duration such as \"for a month\" or \"after 2 years\"", self.retention_statement),
            );
        }
        if let Some(phone) = &self.contact.phone {
            if !plausible_phone(phone.trim()) {
                bad("contact_phone", format!("{phone:?} does not look like a telephone number"));
            }
        }
        if let Some(t) = &self.contact.access_request_timescale {
            if !matches_any(RuleId::Gdpr5, "timescale", &format!("within {}", t.trim())) {
                bad("access_request_timescale", format!("{t:?} is not a duration such as \"30 days\""));
            }
        }
        for p in &self.purposes {
            if p.text.trim().is_empty() {
                bad("purpose", "purpose text must not be empty".into());
            }
            if matches_any(RuleId::Gdpr3, "profiling", &p.text) && !p.requires_opt_out {
                bad("purpose", format!("{:?} involves profiling and must offer an opt-out", p.text));
            }
        }
        if self.security_statement.trim().is_empty() {
            bad("security_statement", "security statement must not be empty".into());
        }
        if self.enforcement_statement.trim().is_empty() {
            bad("enforcement_statement", "enforcement statement must not be empty".into());
        }
        if let Some(seal) = &self.seal {
            if seal.alt.trim().is_empty() {
                bad("seal_alt", "the seal image needs alt text".into());
            }
        }
        out
    }

    fn more_info(&self, id: &str) -> String {
        self.more_info_links.get(id).cloned().unwrap_or_else(|| format!("#more-{id}"))
    }

    fn sensitive_items(&self) -> Vec<&str> {
        self.data_items
            .iter()
            .map(|d| d.trim())
            .filter(|d| matches_any(RuleId::Gdpr3, "sensitive_data", d))
            .collect()
    }
}

fn build(config: &PolicyConfig) -> Vec<RenderedSection> {
    let section = |id: &'static str, title: &'static str, paragraphs: Vec<String>, controls: Vec<MarkerKind>| RenderedSection {
        id,
        title,
        icon: id,
        paragraphs,
        controls,
        more_info: config.more_info(id),
        seal: None,
    };
    let items: Vec<&str> = config.data_items.iter().map(|d| d.trim()).collect();

    let collect = section(
        "collect",
        "What we collect",
        vec![format!(
            "If you sign up to use this website's services, we may keep personal information about you. \
             This will include your {}.",
            join_list(&items)
        )],
        vec![],
    );

    let (opt_in, other): (Vec<&Purpose>, Vec<&Purpose>) = config.purposes.iter().partition(|p| p.requires_opt_in);
    let other_texts: Vec<&str> = other.iter().map(|p| p.text.trim()).collect();
    let mut why = "This website will use your information to provide better services to you".to_string();
    if !other_texts.is_empty() {
        why.push_str(", and ");
        why.push_str(&join_list(&other_texts));
    }
    let purpose_controls = if other.iter().any(|p| p.requires_opt_out) {
        vec![MarkerKind::OptOut]
    } else {
        vec![]
    };
    let purpose = section("purpose", "Why we use it", vec![sentence(&why)], purpose_controls);

    let mut basis = Vec::new();
    let mut basis_controls = Vec::new();
    if opt_in.is_empty() {
        basis.push("We use your information to meet our contract with you.".to_string());
    } else {
        let texts: Vec<&str> = opt_in.iter().map(|p| p.text.trim()).collect();
        basis.push(sentence(&format!(
            "We would like to collect all order information to help us to {}",
            join_list(&texts)
        )));
        basis_controls.push(MarkerKind::OptIn);
        if opt_in.iter().any(|p| p.requires_opt_out) {
            basis_controls.push(MarkerKind::OptOut);
        }
    }
    let sensitive = config.sensitive_items();
    if !sensitive.is_empty() {
        basis.push(format!(
            "We only use your {} with your consent, or when we are required by law.",
            join_list(&sensitive)
        ));
    }
    let processing = section("processing", "How we process it", basis, basis_controls);

    let retention = section(
        "retention",
        "How long we keep it",
        vec![sentence(&format!(
            "Order information is kept to meet legal requirements. Your personal information will be deleted {}",
            config.retention_statement.trim()
        ))],
        vec![],
    );

    let mut contact_text = vec![format!(
        "If you have any questions or comments about this privacy policy, or the data collected, email {}.",
        config.contact.email.trim()
    )];
    if let Some(phone) = &config.contact.phone {
        contact_text.push(format!("You can also call us on {}.", phone.trim()));
    }
    if let Some(dpo) = &config.contact.dpo_name {
        contact_text.push(sentence(&format!("Our data protection officer is {}", dpo.trim())));
    }
    if let Some(t) = &config.contact.access_request_timescale {
        contact_text.push(sentence(&format!("We will answer requests for your data within {}", t.trim())));
    }
    let contact = section("contact", "Contact us", vec![contact_text.join(" ")], vec![]);

    let mut trust = section(
        "trust",
        "Keeping it safe",
        vec![format!("{} {}", sentence(&config.security_statement), sentence(&config.enforcement_statement))],
        vec![],
    );
    trust.seal = config.seal.clone();

    vec![collect, purpose, processing, retention, contact, trust]
}

/// Builds the six-section policy, or reports every problem found.
pub fn generate(config: &PolicyConfig) -> Result<RenderedPolicy, TemplateError> {
    let problems = config.problems();
    if !problems.is_empty() {
        return Err(TemplateError::ValidationFailed(problems));
    }

    let policy = RenderedPolicy {
        title: format!("{} privacy policy", config.company_name.trim()),
        sections: build(config),
    };

    let mut problems = Vec::new();
    for section in &policy.sections {
        let check = section.check();
        let mut reasons = Vec::new();
        if !check.gfi_ok {
            reasons.push(format!("fog index {:.2} exceeds {SECTION_GFI_MAX}", check.stats.gfi));
        }
        if !check.words_ok {
            let words = crate::textmetrics::tokenize(&section.text()).words.len();
            reasons.push(format!("{words} words exceed the {SECTION_WORD_CAP}-word cap"));
        }
        if !reasons.is_empty() {
            problems.push(Problem {
                target: section.id.into(),
                message: reasons.join("; "),
                stats: Some(check.stats),
            });
        }
    }
    if problems.is_empty() {
        problems.extend(self_check(&policy));
    }
    if problems.is_empty() {
        Ok(policy)
    } else {
        Err(TemplateError::ValidationFailed(problems))
    }
}

/// Re-analyzes the rendered policy against the default rules.
fn self_check(policy: &RenderedPolicy) -> Vec<Problem> {
    let md = policy.to_markdown(&Theme::default());
    let doc = crate::ingest::extract("generated".into(), SourceFormat::Markdown, &md);
    let report = analyze_default(&doc, &RULES);
    if report.verdict == Verdict::Compliant {
        return Vec::new();
    }
    RuleId::GDPR
        .iter()
        .filter_map(|id| report.finding(*id))
        .filter(|f| !f.is_satisfied())
        .map(|f| Problem {
            target: "document".into(),
            message: format!("{} {}: {}", f.rule_id, f.status.as_str(), f.message),
            stats: Some(report.stats),
        })
        .collect()
}
