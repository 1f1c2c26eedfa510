//! End-to-end runs of the `policylint` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn policylint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_policylint"))
        .args(["--no-network"])
        .args(args)
        .env_remove("POLICYLINT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn labeled(name: &str) -> String {
    fixtures().join("labeled").join(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_follow_the_verdict() {
    assert_eq!(policylint(&["analyze", &labeled("01.txt")]).status.code(), Some(0));
    let out = policylint(&["analyze", &labeled("08.txt")]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let gdpr4 = json["findings"].as_array().unwrap().iter().find(|f| f["rule_id"] == "GDPR4").unwrap();
    assert_eq!(gdpr4["status"], "not_satisfied");
    assert_eq!(json["verdict"], "not_compliant");

    let missing = policylint(&["analyze", "no/such/file.txt"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
}

#[test]
fn labeled_corpus_exit_codes() {
    let labels = std::fs::read_to_string(fixtures().join("labeled/labels.tsv")).unwrap();
    for line in labels.lines().filter(|l| !l.starts_with('#')) {
        let fields: Vec<&str> = line.split('\t').collect();
        let all_satisfied = fields[1..7].iter().all(|l| *l == "S");
        let code = policylint(&["analyze", &labeled(fields[0])]).status.code();
        assert_eq!(code, Some(if all_satisfied { 0 } else { 1 }), "{}", fields[0]);
    }
}

#[test]
fn several_sources_need_concat() {
    let a = labeled("01.txt");
    let b = labeled("08.txt");
    assert_eq!(policylint(&["analyze", &a, &b]).status.code(), Some(2));
    // The retention sentence in 01 satisfies GDPR4 for the combined policy.
    assert_eq!(policylint(&["analyze", "--concat", &b, &a]).status.code(), Some(0));
}

#[test]
fn generated_template_analyzes_as_compliant() {
    let dir = tempfile::tempdir().unwrap();
    let conf = fixtures().join("company_x.conf");
    let out = policylint(&["--out", dir.path().to_str().unwrap(), "template", conf.to_str().unwrap(), "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for ext in ["md", "html"] {
        let path = dir.path().join(format!("company_x.{ext}"));
        assert!(path.exists());
        assert_eq!(policylint(&["analyze", path.to_str().unwrap()]).status.code(), Some(0), "{ext}");
    }
}

#[test]
fn invalid_template_config_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "company_name = Shop\ndata_item = name\ncontact_email = not-an-address\n").unwrap();
    let out = policylint(&["--out", dir.path().to_str().unwrap(), "template", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("bad.md").exists());
}

#[test]
fn manifest_errors_and_failed_rows() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    assert_eq!(policylint(&["corpus", empty.to_str().unwrap()]).status.code(), Some(2));

    let manifest = dir.path().join("m.txt");
    std::fs::write(&manifest, format!("{}\nmissing.txt\n", labeled("01.txt"))).unwrap();
    let out = policylint(&["corpus", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].ends_with(",compliant"), "{}", rows[1]);
    assert!(rows[2].contains("missing.txt,,,,,indeterminate"), "{}", rows[2]);
}

#[test]
fn rules_dump_and_overrides() {
    let dump = policylint(&["rules"]);
    assert_eq!(dump.status.code(), Some(0));
    let defaults = include_str!("../../core/src/ruleset/default_rules.txt");
    assert_eq!(stdout(&dump), defaults);

    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("r.txt");
    std::fs::write(&rules, "[GDPR6]\ngfi_max = 14\n").unwrap();
    let dumped = stdout(&policylint(&["--rules", rules.to_str().unwrap(), "rules"]));
    assert!(dumped.contains("gfi_max = 14"));

    std::fs::write(&rules, "[GDPR6]\nthis is not a setting\n").unwrap();
    let bad = policylint(&["--rules", rules.to_str().unwrap(), "rules"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = policylint(&["analyze", &labeled("07.txt")]);
    let b = policylint(&["analyze", &labeled("07.txt")]);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.txt");
    let list: Vec<String> = (1..=12).map(|i| labeled(&format!("{i:02}.txt"))).collect();
    std::fs::write(&manifest, list.join("\n")).unwrap();
    let m = manifest.to_str().unwrap();
    let a = policylint(&["--format", "json", "corpus", m, "--jobs", "4"]);
    let b = policylint(&["--format", "json", "corpus", m, "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn template_texts_read_below_the_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = std::fs::read_to_string(fixtures().join("template_rows.tsv")).unwrap();
    let mut manifest = String::new();
    for (i, line) in tsv.lines().filter(|l| !l.starts_with('#')).enumerate() {
        let text = line.splitn(4, '\t').nth(3).unwrap();
        let path = dir.path().join(format!("row{i}.txt"));
        std::fs::write(&path, text).unwrap();
        manifest.push_str(&format!("{}\n", path.display()));
    }
    let manifest_path = dir.path().join("manifest.txt");
    std::fs::write(&manifest_path, manifest).unwrap();
    let out = policylint(&["--format", "json", "corpus", manifest_path.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row["error"].is_null(), "{row}");
        assert!(row["gfi"].as_f64().unwrap() <= 13.0, "{row}");
        assert_eq!(row["gdpr6"], "satisfied");
    }
}
