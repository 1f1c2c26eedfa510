//! Corpus manifests: one source per line.

use std::path::Path;

use anyhow::{bail, Context, Result};
use policylint_core::ingest::{SourceKind, SourceSpec};

/// Reads a manifest. Relative paths resolve against the manifest's directory.
pub fn read(path: &Path) -> Result<Vec<SourceSpec>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read manifest {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let sources = parse(&text, base);
    if sources.is_empty() {
        bail!("manifest {} lists no sources", path.display());
    }
    Ok(sources)
}

pub fn parse(text: &str, base: &Path) -> Vec<SourceSpec> {
    text.lines()
        .map(|l| l.split_once(" #").map_or(l, |(before, _)| before).trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let spec = SourceSpec::parse(l);
            if spec.kind == SourceKind::File && Path::new(l).is_relative() {
                SourceSpec {
                    locator: base.join(l).to_string_lossy().into_owned(),
                    ..spec
                }
            } else {
                spec
            }
        })
        .collect()
}
