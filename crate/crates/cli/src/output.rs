//! CSV and text renderings of corpus summaries.

use std::io::Write;

use anyhow::Result;
use policylint_core::report::fixed;
use policylint_core::{CorpusSummary, RuleId};

pub const CSV_HEADER: [&str; 11] = [
    "source_id",
    "words",
    "complex",
    "complex_percent",
    "gfi",
    "gdpr1",
    "gdpr2",
    "gdpr3",
    "gdpr4",
    "gdpr5",
    "gdpr6",
];

/// One row per document, in summary order, followed by no aggregate line.
pub fn write_csv<W: Write>(summary: &CorpusSummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = CSV_HEADER.to_vec();
    header.push("verdict");
    w.write_record(&header)?;
    for row in &summary.rows {
        let mut record = vec![row.source_id.clone()];
        if row.error.is_some() {
            // Nothing was measured; zeros would read as a real score.
            record.extend(std::iter::repeat_n(String::new(), 4));
        } else {
            record.extend([
                row.stats.word_count.to_string(),
                row.stats.complex_word_count.to_string(),
                fixed(row.complex_percent(), 2),
                fixed(row.stats.gfi, 2),
            ]);
        }
        record.extend(row.statuses.iter().map(|s| s.as_str().to_string()));
        record.push(row.verdict.as_str().to_string());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(summary: &CorpusSummary) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(summary, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

pub fn summary_text(summary: &CorpusSummary) -> String {
    let mut out = String::new();
    let ids: Vec<String> = RuleId::GDPR.iter().map(|id| id.to_string()).collect();
    out.push_str(&format!("{:<40} {:>7} {:>6} {:>7} {} verdict\n", "source", "words", "gfi", "complex", ids.join(" ")));
    for row in &summary.rows {
        let marks: Vec<String> = row
            .statuses
            .iter()
            .map(|s| {
                let m = match s {
                    policylint_core::Status::Satisfied => "yes",
                    policylint_core::Status::NotSatisfied => "no",
                    policylint_core::Status::Indeterminate => "?",
                };
                format!("{m:^5}")
            })
            .collect();
        out.push_str(&format!(
            "{:<40} {:>7} {:>6} {:>6}% {} {}",
            truncate(&row.source_id, 40),
            row.stats.word_count,
            fixed(row.stats.gfi, 2),
            fixed(row.complex_percent(), 2),
            marks.join(" "),
            row.verdict.as_str()
        ));
        if let Some(err) = &row.error {
            out.push_str(&format!("  ({err})"));
        }
        out.push('\n');
    }
    if let Some(g) = summary.gfi() {
        out.push_str(&format!(
            "\n{} documents, {} compliant; gfi mean {} min {} max {}\n",
            summary.rows.len(),
            summary.compliant_count(),
            fixed(g.mean, 2),
            fixed(g.min, 2),
            fixed(g.max, 2)
        ));
    }
    out
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        let tail: String = s.chars().rev().take(n - 3).collect::<Vec<_>>().into_iter().rev().collect();
        format!("...{tail}")
    }
}
