//! Company profile read from a flat `key = value` file.
//!
//! ```text
//! # comments start with '#'
//! company_name = Company X
//! data_item = name                  # repeat for each item
//! purpose = predict global trends | opt-in
//! purpose = adverts from 3rd parties | opt-out
//! retention = if you do not use this website for a month
//! contact_email = privacy@companyx.example
//! contact_phone = 01382 123 456      # optional
//! dpo_name = Jane Smith              # optional
//! access_request_timescale = 30 days # optional
//! security_statement = Your data is stored safely and securely.
//! enforcement_statement = If we do lose your data we will be fined by the Information Commissioner.
//! seal_image = seals/trust.svg       # optional, needs seal_alt
//! seal_alt = Privacy seal
//! more_info.collect = https://companyx.example/privacy#collect
//! ```
//!
//! A purpose takes an optional `| opt-in`, `| opt-out` or `| opt-in opt-out`
//! suffix. Opt-in purposes complete "to help us to ...", the others complete
//! "to provide better services to you, and ...". Values run to the end of
//! the line; a `#` inside a value is kept unless preceded by whitespace.

use std::collections::BTreeMap;

use super::TemplateError;

pub const DEFAULT_SECURITY: &str = "Your data is stored safely and securely.";
pub const DEFAULT_ENFORCEMENT: &str = "If we do lose your data we will be fined by the Information Commissioner.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Purpose {
    pub text: String,
    pub requires_opt_in: bool,
    pub requires_opt_out: bool,
}

impl Purpose {
    pub fn new(text: impl Into<String>, requires_opt_in: bool, requires_opt_out: bool) -> Self {
        Purpose {
            text: text.into(),
            requires_opt_in,
            requires_opt_out,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seal {
    pub src: String,
    pub alt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Contact {
    pub email: String,
    pub phone: Option<String>,
    pub dpo_name: Option<String>,
    pub access_request_timescale: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyConfig {
    pub company_name: String,
    pub data_items: Vec<String>,
    pub purposes: Vec<Purpose>,
    /// Completes "Your personal information will be deleted ...".
    pub retention_statement: String,
    pub contact: Contact,
    pub security_statement: String,
    pub enforcement_statement: String,
    pub seal: Option<Seal>,
    /// Section id to URL.
    pub more_info_links: BTreeMap<String, String>,
}

impl Default for PolicyConfig {
    fn default() -> Self {
        PolicyConfig {
            company_name: String::new(),
            data_items: Vec::new(),
            purposes: Vec::new(),
            retention_statement: String::new(),
            contact: Contact::default(),
            security_statement: DEFAULT_SECURITY.into(),
            enforcement_statement: DEFAULT_ENFORCEMENT.into(),
            seal: None,
            more_info_links: BTreeMap::new(),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    let mut prev_space = true;
    for (i, c) in line.char_indices() {
        if c == '#' && prev_space {
            return &line[..i];
        }
        prev_space = c.is_whitespace();
    }
    line
}

fn parse_purpose(value: &str) -> Result<Purpose, String> {
    let (text, flags) = match value.rsplit_once('|') {
        Some((t, f)) => (t.trim(), f.trim()),
        None => (value.trim(), ""),
    };
    let mut purpose = Purpose::new(text, false, false);
    for flag in flags.split(|c: char| c.is_whitespace() || c == ',').filter(|f| !f.is_empty()) {
        match flag.to_ascii_lowercase().as_str() {
            "opt-in" | "opt_in" | "optin" => purpose.requires_opt_in = true,
            "opt-out" | "opt_out" | "optout" => purpose.requires_opt_out = true,
            "none" => {}
            other => return Err(format!("unknown purpose flag {other:?}; expected opt-in or opt-out")),
        }
    }
    if purpose.text.is_empty() {
        return Err("purpose text is empty".into());
    }
    Ok(purpose)
}

impl PolicyConfig {
    pub fn parse(text: &str) -> Result<Self, TemplateError> {
        let mut cfg = PolicyConfig::default();
        let mut seal_src = None;
        let mut seal_alt = None;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let err = |message: String| TemplateError::Parse { line: line_no, message };
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(format!("expected `key = value`, found {line:?}")));
            };
            let key = key.trim();
            let value = value.trim().to_string();
            match key {
                "company_name" => cfg.company_name = value,
                "data_item" => cfg.data_items.push(value),
                "purpose" => cfg.purposes.push(parse_purpose(&value).map_err(err)?),
                "retention" | "retention_statement" => cfg.retention_statement = value,
                "contact_email" => cfg.contact.email = value,
                "contact_phone" => cfg.contact.phone = Some(value),
                "dpo_name" => cfg.contact.dpo_name = Some(value),
                "access_request_timescale" => cfg.contact.access_request_timescale = Some(value),
                "security_statement" => cfg.security_statement = value,
                "enforcement_statement" => cfg.enforcement_statement = value,
                "seal_image" => seal_src = Some(value),
                "seal_alt" => seal_alt = Some(value),
                _ => match key.strip_prefix("more_info.") {
                    Some(id) if super::SECTION_IDS.contains(&id) => {
                        cfg.more_info_links.insert(id.to_string(), value);
                    }
                    Some(id) => {
                        return Err(err(format!(
                            "unknown section {id:?}; expected one of {}",
                            super::SECTION_IDS.join(", ")
                        )))
                    }
                    None => return Err(err(format!("unknown key {key:?}"))),
                },
            }
        }
        cfg.seal = match (seal_src, seal_alt) {
            (Some(src), Some(alt)) => Some(Seal { src, alt }),
            (None, None) => None,
            (Some(_), None) => {
                return Err(TemplateError::Parse {
                    line: 0,
                    message: "seal_image needs seal_alt".into(),
                })
            }
            (None, Some(_)) => {
                return Err(TemplateError::Parse {
                    line: 0,
                    message: "seal_alt given without seal_image".into(),
                })
            }
        };
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_repeated_keys_and_flags() {
        let cfg = PolicyConfig::parse(
            "# Company X\ncompany_name = Company X\ndata_item = name\ndata_item = email # trailing\n\
             purpose = predict global trends | opt-in\npurpose = adverts from 3rd parties | opt-out\n\
             purpose = run the shop\nretention = for a month\ncontact_email = a@b.example\n\
             more_info.retention = https://x.example/#retention\n",
        )
        .unwrap();
        assert_eq!(cfg.data_items, ["name", "email"]);
        assert_eq!(cfg.purposes[0], Purpose::new("predict global trends", true, false));
        assert_eq!(cfg.purposes[1], Purpose::new("adverts from 3rd parties", false, true));
        assert_eq!(cfg.purposes[2], Purpose::new("run the shop", false, false));
        assert_eq!(cfg.more_info_links["retention"], "https://x.example/#retention");
        assert_eq!(cfg.security_statement, DEFAULT_SECURITY);
    }

    #[test]
    fn reports_line_numbers() {
        let err = PolicyConfig::parse("company_name = X\n\nnonsense line\n").unwrap_err();
        assert!(matches!(err, TemplateError::Parse { line: 3, .. }), "{err}");
        let err = PolicyConfig::parse("colour = blue").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
        let err = PolicyConfig::parse("purpose = x | maybe").unwrap_err();
        assert!(err.to_string().contains("maybe"));
        let err = PolicyConfig::parse("more_info.cookies = /c").unwrap_err();
        assert!(err.to_string().contains("cookies"));
    }

    #[test]
    fn seal_needs_both_keys() {
        assert!(PolicyConfig::parse("seal_image = s.svg").is_err());
        let cfg = PolicyConfig::parse("seal_image = s.svg\nseal_alt = Privacy seal").unwrap();
        assert_eq!(cfg.seal.unwrap().alt, "Privacy seal");
    }
}
