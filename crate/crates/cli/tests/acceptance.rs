//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) and exits non-zero when any
//! criterion fails.

#[path = "../../core/tests/common/configs.rs"]
#[allow(dead_code)]
mod configs;
#[path = "../../core/tests/common/text.rs"]
#[allow(dead_code)]
mod text;

use std::cell::Cell;
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use policylint_cli::output::csv_string;
use policylint_core::ingest::extract;
use policylint_core::templategen::{generate, Theme};
use policylint_core::textmetrics::gunning_fog;
use policylint_core::{
    analyze_default, compute_stats, CorpusRow, CorpusSummary, Document, MetricSettings, RuleId, RuleSet,
    SourceFormat, Status, TextStats, Verdict,
};

const TEMPLATE_ROW_TOLERANCE: f64 = 1.0;
const TEMPLATE_ROW_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_GFI_TOLERANCE: f64 = 1e-9;
const ROUND_TRIP_CASES: u32 = 20;
const MONOTONICITY_CASES: u32 = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixtures().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty())
}

fn template_rows() -> Outcome {
    let rules = RuleSet::defaults();
    let tsv = read_fixture("template_rows.tsv");
    let start = Instant::now();
    let mut detail = String::new();
    let mut misses = Vec::new();
    for line in data_lines(&tsv) {
        let f: Vec<&str> = line.splitn(4, '\t').collect();
        let published: f64 = f[1].parse().unwrap();
        let report = analyze_default(&Document::from_text(f[0], f[3]), &rules);
        let gfi = report.stats.gfi;
        let diff = gfi - published;
        let _ = write!(detail, " {}={:.3}({:+.2})", f[0], gfi, diff);
        if diff.abs() > TEMPLATE_ROW_TOLERANCE {
            misses.push(f[0].to_string());
        }
    }
    let elapsed = start.elapsed();
    let _ = write!(detail, "; {} ms", elapsed.as_millis());
    if elapsed >= TEMPLATE_ROW_BUDGET {
        misses.push(format!("runtime {elapsed:?}"));
    }
    if misses.is_empty() {
        Ok(detail.trim().to_string())
    } else {
        Err(format!("outside ±{TEMPLATE_ROW_TOLERANCE}: {};{detail}", misses.join(", ")))
    }
}

/// A text of exactly `words` words in `sentences` sentences with `complex`
/// three-syllable words, none of them sentence-initial.
fn synthetic(words: usize, sentences: usize, complex: usize) -> String {
    let mut out = Vec::with_capacity(sentences);
    for i in 0..sentences {
        let w = words / sentences + usize::from(i < words % sentences);
        let c = complex / sentences + usize::from(i < complex % sentences);
        assert!(c < w, "sentence {i} cannot hold {c} complex words in {w}");
        let mut s = vec!["We"];
        s.extend(std::iter::repeat_n("information", c));
        s.extend(std::iter::repeat_n("we", w - 1 - c));
        out.push(s.join(" ") + ".");
    }
    out.join(" ")
}

fn thresholds() -> Outcome {
    let rules = RuleSet::defaults();
    let cases = [
        ("BBC", 5187, 312, 608, 11.34, Status::Satisfied),
        ("eBay", 5260, 202, 994, 17.97, Status::NotSatisfied),
        ("boundary", 40, 2, 5, 13.0, Status::Satisfied),
    ];
    let mut detail = Vec::new();
    for (name, w, s, c, gfi, want) in cases {
        let report = analyze_default(&Document::from_text(name, synthetic(w, s, c)), &rules);
        let st = report.stats;
        if (st.word_count, st.sentence_count, st.complex_word_count) != (w, s, c) {
            return Err(format!(
                "{name}: fixture counts {}/{}/{} != {w}/{s}/{c}",
                st.word_count, st.sentence_count, st.complex_word_count
            ));
        }
        if (st.gfi - gfi).abs() > 0.005 {
            return Err(format!("{name}: gfi {:.4} is not {gfi}", st.gfi));
        }
        let got = report.status(RuleId::Gdpr6);
        if got != want {
            return Err(format!("{name}: gfi {:.4} gave GDPR6 {got:?}, want {want:?}", st.gfi));
        }
        detail.push(format!("{name} {:.2} {}", st.gfi, got.as_str()));
    }
    Ok(detail.join(", "))
}

fn hand_oracle() -> Outcome {
    let tsv = read_fixture("handcount.tsv");
    let mut n = 0;
    for line in data_lines(&tsv) {
        let f: Vec<&str> = line.splitn(4, '\t').collect();
        let (w, s, c): (usize, usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap());
        let text = f[3].replace("\\n", "\n");
        let st = compute_stats(&text, &MetricSettings::default());
        if (st.word_count, st.sentence_count, st.complex_word_count) != (w, s, c) {
            return Err(format!(
                "{text:?}: got {}/{}/{}, oracle {w}/{s}/{c}",
                st.word_count, st.sentence_count, st.complex_word_count
            ));
        }
        let expected = gunning_fog(w, s, c);
        if (st.gfi - expected).abs() > ORACLE_GFI_TOLERANCE {
            return Err(format!("{text:?}: gfi {} vs formula {expected}", st.gfi));
        }
        n += 1;
    }
    if n != 10 {
        return Err(format!("oracle has {n} documents, expected 10"));
    }
    Ok(format!("{n} documents exact"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn round_trip() -> Outcome {
    let rules = RuleSet::defaults();
    let theme = Theme::default();
    runner(ROUND_TRIP_CASES)
        .run(&configs::policy_config(), |cfg| {
            let policy = generate(&cfg).map_err(|e| TestCaseError::fail(e.to_string()))?;
            for s in &policy.sections {
                let check = s.check();
                if !check.passed() {
                    return Err(TestCaseError::fail(format!("section {} failed: {check:?}", s.id)));
                }
            }
            for (format, body) in [
                (SourceFormat::Markdown, policy.to_markdown(&theme)),
                (SourceFormat::Html, policy.to_html(&theme)),
            ] {
                let report = analyze_default(&extract("generated".into(), format, &body), &rules);
                if report.verdict != Verdict::Compliant {
                    return Err(TestCaseError::fail(report.to_text()));
                }
            }
            Ok(())
        })
        .map(|()| format!("{ROUND_TRIP_CASES} configs compliant in markdown and html"))
        .map_err(|e| e.to_string())
}

fn labeled() -> Outcome {
    let rules = RuleSet::defaults();
    let labels = read_fixture("labeled/labels.tsv");
    let mut matched = 0;
    let mut total = 0;
    let mut misses = Vec::new();
    for line in data_lines(&labels) {
        let f: Vec<&str> = line.split('\t').collect();
        let body = read_fixture(&format!("labeled/{}", f[0]));
        let report = analyze_default(&Document::from_text(f[0], body.trim()), &rules);
        let ok = RuleId::GDPR.iter().zip(&f[1..7]).all(|(id, label)| {
            let want = if *label == "S" { Status::Satisfied } else { Status::NotSatisfied };
            report.status(*id) == want
        });
        total += 1;
        if ok {
            matched += 1;
        } else {
            misses.push(f[0].to_string());
        }
    }
    if matched != 12 || total != 12 {
        return Err(format!("{matched}/{total} match; mismatched: {}", misses.join(", ")));
    }

    let body = read_fixture("labeled/01.txt");
    let cut = body.replace(" Your data is deleted after 12 months.", "");
    if cut == body {
        return Err("retention sentence not found in 01.txt".into());
    }
    let before = analyze_default(&Document::from_text("01", body.trim()), &rules);
    let after = analyze_default(&Document::from_text("01-cut", cut.trim()), &rules);
    let flipped: Vec<String> = RuleId::GDPR
        .iter()
        .filter(|id| before.status(**id) != after.status(**id))
        .map(|id| id.to_string())
        .collect();
    if flipped != ["GDPR4"] {
        return Err(format!("deleting retention flipped {flipped:?}"));
    }
    Ok("12/12; retention mutation flips GDPR4 only".into())
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_policylint"))
        .arg("--no-network")
        .args(args)
        .env_remove("POLICYLINT_CACHE_DIR")
        .output()
        .expect("policylint runs");
    assert!(out.status.code().is_some_and(|c| c < 2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Outcome {
    let dir = fixtures();
    let mut sources: Vec<String> = (1..=12).map(|i| dir.join(format!("labeled/{i:02}.txt")).display().to_string()).collect();
    for extra in ["template_rows.txt", "policy.html", "sections.md"] {
        sources.push(dir.join(extra).display().to_string());
    }
    for src in &sources {
        if run_binary(&["analyze", src]) != run_binary(&["analyze", src]) {
            return Err(format!("analyze output differs for {src}"));
        }
    }
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let manifest = tmp.path().join("manifest.txt");
    std::fs::write(&manifest, sources.join("\n")).map_err(|e| e.to_string())?;
    let m = manifest.to_str().unwrap();
    for format in ["csv", "json"] {
        let a = run_binary(&["--format", format, "corpus", m, "--jobs", "4"]);
        let b = run_binary(&["--format", format, "corpus", m, "--jobs", "2"]);
        if a != b {
            return Err(format!("corpus {format} output differs between runs"));
        }
    }
    Ok(format!("{} documents, analyze and corpus byte-identical", sources.len()))
}

fn monotonicity() -> Outcome {
    let settings = MetricSettings::default();
    let premise = |t: &String| {
        let st = compute_stats(t, &MetricSettings::default());
        st.word_count >= 1 && st.sentence_count >= 1 && st.complex_word_count < st.word_count
    };
    let strategy = (text::plain_text().prop_filter("W >= 1, S >= 1, C < W", premise), text::complex_word());
    let checked = Cell::new(0u32);
    runner(MONOTONICITY_CASES)
        .run(&strategy, |(base, word)| {
            let before = compute_stats(&base, &settings);
            let after = compute_stats(&text::append_to_last_sentence(&base, word), &settings);
            if after.complex_word_count != before.complex_word_count + 1 || after.word_count != before.word_count + 1 {
                return Err(TestCaseError::fail(format!("{word:?} appended to {base:?} was not counted as complex")));
            }
            if after.gfi <= before.gfi {
                return Err(TestCaseError::fail(format!("{base:?} + {word:?}: gfi {} -> {}", before.gfi, after.gfi)));
            }
            checked.set(checked.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} cases strictly increase", checked.get()))
}

fn complex_percent_arithmetic() -> Outcome {
    // (site, words, complex) pairs from the published site table.
    let pairs = [
        ("Google.co.uk", 2831, 487),
        ("Facebook", 2697, 416),
        ("Reddit", 2680, 423),
        ("Amazon.co.uk", 3059, 581),
        ("BBC", 5187, 608),
        ("Wikipedia", 445, 91),
        ("eBay", 5260, 994),
        ("Twitter", 3793, 586),
    ];
    let rows = pairs
        .iter()
        .map(|(site, w, c)| CorpusRow {
            stats: TextStats::from_counts(*w, 1, *c),
            error: None,
            ..CorpusRow::failed(*site, "")
        })
        .collect();
    let csv = csv_string(&CorpusSummary::new(rows)).map_err(|e| e.to_string())?;
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let mut n = 0;
    for (record, (site, w, c)) in reader.records().zip(pairs) {
        let record = record.map_err(|e| e.to_string())?;
        let percent: f64 = record[3].parse().map_err(|e| format!("{site}: {e}"))?;
        let expected = 100.0 * c as f64 / w as f64;
        if &record[0] != site || (percent - expected).abs() > 0.005 {
            return Err(format!("{site}: csv {percent} vs 100*{c}/{w} = {expected:.4}"));
        }
        n += 1;
    }
    if n != pairs.len() {
        return Err(format!("{n} rows written for {} pairs", pairs.len()));
    }
    Ok(format!("{n} rows, e.g. Wikipedia 20.45, eBay 18.90"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("template text reproduction", template_rows),
        ("threshold semantics", thresholds),
        ("hand-count oracle", hand_oracle),
        ("round-trip compliance", round_trip),
        ("labeled mini-corpus", labeled),
        ("determinism", determinism),
        ("monotonicity property", monotonicity),
        ("complex-percent arithmetic", complex_percent_arithmetic),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
