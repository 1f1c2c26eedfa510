//! Random valid policy configs for property tests.

use proptest::prelude::*;
use proptest::sample::{select, subsequence};

use policylint_core::templategen::{Contact, PolicyConfig, Purpose, Seal};

const ITEMS: &[&str] = &[
    "name",
    "home address",
    "email",
    "phone number",
    "date of birth",
    "order history",
    "location",
    "payment details",
    "health records",
    "shoe size",
];

/// (text, opt-in, opt-out). Opt-in texts complete "to help us to ...",
/// the others complete "to provide better services to you, and ...".
const PURPOSES: &[(&str, bool, bool)] = &[
    ("predict global trends", true, false),
    ("improve our shop", true, false),
    ("plan new products", true, true),
    ("adverts from 3rd parties", false, true),
    ("order updates by email", false, false),
    ("profiling for tailored offers", false, true),
];

const RETENTION: &[&str] = &[
    "if you do not use this website for a month",
    "two years after your last order",
    "after 30 days",
    "one month after you close your account",
    "after 6 months",
];

pub fn policy_config() -> impl Strategy<Value = PolicyConfig> {
    (
        select(vec!["Company X", "Acme Shop", "Blue Fern Books", "Northwind Travel"]),
        subsequence(ITEMS.to_vec(), 1..=5),
        subsequence(PURPOSES.to_vec(), 0..=3),
        select(RETENTION.to_vec()),
        ("[a-z]{1,8}", "[a-z]{1,8}"),
        proptest::option::of(select(vec!["01382 123 456", "+44 20 7946 0000", "0800 123 4567"])),
        proptest::option::of(select(vec!["Jane Smith", "Ravi Patel"])),
        proptest::option::of(select(vec!["30 days", "one month", "two weeks"])),
        any::<bool>(),
    )
        .prop_map(|(company, items, purposes, retention, (user, host), phone, dpo, timescale, seal)| PolicyConfig {
            company_name: company.into(),
            data_items: items.into_iter().map(String::from).collect(),
            purposes: purposes.into_iter().map(|(t, i, o)| Purpose::new(t, i, o)).collect(),
            retention_statement: retention.into(),
            contact: Contact {
                email: format!("{user}@{host}.example"),
                phone: phone.map(String::from),
                dpo_name: dpo.map(String::from),
                access_request_timescale: timescale.map(String::from),
            },
            seal: seal.then(|| Seal {
                src: "seals/trust.svg".into(),
                alt: "Privacy seal".into(),
            }),
            ..PolicyConfig::default()
        })
}
