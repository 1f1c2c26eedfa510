//! Command implementations behind the `policylint` binary.

pub mod args;
pub mod manifest;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use args::{AnalyzeArgs, Cli, Command, Common, CorpusArgs, OutputFormat, TemplateArgs};
use policylint_core::ingest::{self, discover_policy_link, FetchSettings, SourceKind, SourceSpec};
use policylint_core::report::Envelope;
use policylint_core::templategen::{generate, PolicyConfig, Theme};
use policylint_core::{analyze, CorpusRow, CorpusSummary, Exclusions, MetricSettings, RuleSet, SourceFormat, Verdict};

/// Exit status for a run that completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// The analysis finished but the policy is not compliant.
    NotCompliant,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::NotCompliant => 1,
        }
    }
}

/// Exit status for any error.
pub const ERROR_EXIT: i32 = 2;

pub fn run(cli: Cli) -> Result<Outcome> {
    let rules = load_rules(&cli.common)?;
    match cli.command {
        Command::Analyze(args) => cmd_analyze(&cli.common, &rules, &args),
        Command::Corpus(args) => cmd_corpus(&cli.common, &rules, &args),
        Command::Template(args) => cmd_template(&cli.common, &args),
        Command::Rules => {
            emit(&cli.common, &rules.dump())?;
            Ok(Outcome::Success)
        }
    }
}

pub fn load_rules(common: &Common) -> Result<RuleSet> {
    match &common.rules {
        None => Ok(RuleSet::defaults()),
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read rules file {}", path.display()))?;
            RuleSet::with_overrides(&text).map_err(|e| anyhow!("rules file {}: {e}", path.display()))
        }
    }
}

/// Parses `all`, `none`, or `name=on|off` toggles applied over `base`.
pub fn parse_exclusions(spec: &str, base: Exclusions) -> Result<Exclusions> {
    let spec = spec.trim();
    match spec {
        "all" => return Ok(Exclusions::default()),
        "none" => return Ok(Exclusions::NONE),
        _ => {}
    }
    let mut out = base;
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').unwrap_or((part, "on"));
        let on = match value.trim() {
            "on" | "true" | "yes" | "1" => true,
            "off" | "false" | "no" | "0" => false,
            other => bail!("exclusion {name:?}: expected on or off, found {other:?}"),
        };
        match name.trim().replace('-', "_").as_str() {
            "proper_nouns" => out.proper_nouns = on,
            "compounds" => out.compounds = on,
            "inflections" => out.inflections = on,
            other => bail!("unknown exclusion {other:?}; expected proper_nouns, compounds or inflections"),
        }
    }
    Ok(out)
}

fn metric_settings(common: &Common, rules: &RuleSet) -> Result<MetricSettings> {
    let exclusions = match &common.exclusions {
        Some(spec) => parse_exclusions(spec, rules.exclusions)?,
        None => rules.exclusions,
    };
    Ok(MetricSettings::with_exclusions(exclusions))
}

pub fn fetch_settings(common: &Common) -> FetchSettings {
    FetchSettings {
        network: !common.no_network,
        timeout: Duration::from_secs(common.fetch_timeout.max(1)),
        max_bytes: common.max_bytes,
        user_agent: common.user_agent.clone().unwrap_or_else(|| ingest::DEFAULT_USER_AGENT.to_string()),
        cache_dir: common.cache_dir.clone(),
        min_words: common.min_words,
    }
}

/// Writes `text` to `--out` or standard output.
fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn load_for_analysis(args: &AnalyzeArgs, settings: &FetchSettings) -> Result<policylint_core::Document> {
    let specs: Vec<SourceSpec> = args
        .sources
        .iter()
        .map(|s| SourceSpec::parse(s).with_format(args.input_format.into()))
        .collect();
    if specs.len() > 1 && !args.concat {
        bail!("several sources given; pass --concat to analyze them as one policy");
    }
    let specs = if args.discover {
        specs.iter().map(|s| follow_policy_link(s, settings)).collect::<Result<Vec<_>>>()?
    } else {
        specs
    };
    let doc = if specs.len() == 1 {
        ingest::load(&specs[0], settings)?
    } else {
        ingest::load_concatenated(&specs, settings)?
    };
    Ok(doc)
}

/// Loads a landing page and returns a source for its privacy policy link.
fn follow_policy_link(landing: &SourceSpec, settings: &FetchSettings) -> Result<SourceSpec> {
    let page = match landing.kind {
        SourceKind::Url => String::from_utf8_lossy(&ingest::fetch_raw(&landing.locator, settings)?.body).into_owned(),
        SourceKind::File => {
            std::fs::read_to_string(&landing.locator).with_context(|| format!("cannot read {}", landing.locator))?
        }
        SourceKind::Stdin => bail!("--discover needs a file or URL, not standard input"),
    };
    let link = discover_policy_link(&page).ok_or_else(|| anyhow!("no privacy policy link found on {}", landing.locator))?;
    let target = match landing.kind {
        SourceKind::Url => ingest::resolve_link(&landing.locator, &link.target)
            .map_err(|e| anyhow!("bad policy link {:?}: {e}", link.target))?,
        _ => {
            let base = Path::new(&landing.locator).parent().unwrap_or(Path::new(""));
            base.join(&link.target).to_string_lossy().into_owned()
        }
    };
    Ok(SourceSpec::parse(&target).with_format(landing.format_hint))
}

pub fn cmd_analyze(common: &Common, rules: &RuleSet, args: &AnalyzeArgs) -> Result<Outcome> {
    let settings = fetch_settings(common);
    let metrics = metric_settings(common, rules)?;
    let doc = load_for_analysis(args, &settings)?;
    let report = analyze(&doc, rules, &metrics);

    let format = common.format.unwrap_or(OutputFormat::Json);
    let text = match format {
        OutputFormat::Json if args.envelope => {
            let envelope = Envelope {
                generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                report: &report,
            };
            serde_json::to_string_pretty(&envelope)? + "\n"
        }
        OutputFormat::Json => report.to_canonical_json(),
        OutputFormat::Text => report.to_text(),
        OutputFormat::Csv => output::csv_string(&CorpusSummary::new(vec![CorpusRow::from_report(&report)]))?,
    };
    emit(common, &text)?;
    if common.out.is_some() {
        eprintln!("{}: {} (gfi {:.2})", report.source_id, report.verdict.as_str(), report.stats.gfi);
    }
    Ok(verdict_outcome(report.verdict))
}

pub fn verdict_outcome(verdict: Verdict) -> Outcome {
    match verdict {
        Verdict::Compliant => Outcome::Success,
        Verdict::NotCompliant | Verdict::Indeterminate => Outcome::NotCompliant,
    }
}

/// Analyzes every source; failures become indeterminate rows.
pub fn analyze_corpus(
    sources: &[SourceSpec],
    rules: &RuleSet,
    metrics: &MetricSettings,
    settings: &FetchSettings,
) -> CorpusSummary {
    let rows = sources
        .par_iter()
        .map(|src| match ingest::load(src, settings) {
            Ok(doc) => CorpusRow::from_report(&analyze(&doc, rules, metrics)),
            Err(e) => CorpusRow::failed(src.locator.clone(), e.to_string()),
        })
        .collect();
    CorpusSummary::new(rows)
}

pub fn cmd_corpus(common: &Common, rules: &RuleSet, args: &CorpusArgs) -> Result<Outcome> {
    let sources: Vec<SourceSpec> = manifest::read(&args.manifest)?
        .into_iter()
        .map(|s| s.with_format(args.input_format.into()))
        .collect();
    let settings = fetch_settings(common);
    let metrics = metric_settings(common, rules)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build()?;
    let summary = pool.install(|| analyze_corpus(&sources, rules, &metrics, &settings));
    for row in summary.rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("warning: {}: {}", row.source_id, row.error.as_deref().unwrap_or(""));
    }

    match &common.out {
        Some(dir) if common.format.is_none() => {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let csv_path = dir.join("summary.csv");
            let json_path = dir.join("summary.json");
            std::fs::write(&csv_path, output::csv_string(&summary)?)?;
            std::fs::write(&json_path, summary.to_canonical_json())?;
            eprint!("{}", output::summary_text(&summary));
            eprintln!("wrote {} and {}", csv_path.display(), json_path.display());
        }
        _ => {
            let text = match common.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => output::csv_string(&summary)?,
                OutputFormat::Json => summary.to_canonical_json(),
                OutputFormat::Text => output::summary_text(&summary),
            };
            emit(common, &text)?;
        }
    }
    Ok(Outcome::Success)
}

/// Output paths for a template run: `<out>/<stem>.md` and `.html`.
pub fn template_paths(config: &Path, out: Option<&Path>) -> (PathBuf, PathBuf) {
    let stem = config.file_stem().map_or("policy".into(), |s| s.to_string_lossy().into_owned());
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    (dir.join(format!("{stem}.md")), dir.join(format!("{stem}.html")))
}

pub fn cmd_template(common: &Common, args: &TemplateArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&args.config).with_context(|| format!("cannot read {}", args.config.display()))?;
    let config = PolicyConfig::parse(&text).with_context(|| format!("in {}", args.config.display()))?;
    let policy = generate(&config)?;
    let theme = Theme {
        icon_dir: args.theme_dir.clone(),
        background: args.background.clone(),
        ..Theme::default()
    };
    let markdown = policy.to_markdown(&theme);
    let html = policy.to_html(&theme);

    let (md_path, html_path) = template_paths(&args.config, common.out.as_deref());
    if let Some(dir) = md_path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    std::fs::write(&md_path, &markdown).with_context(|| format!("cannot write {}", md_path.display()))?;
    std::fs::write(&html_path, &html).with_context(|| format!("cannot write {}", html_path.display()))?;
    eprintln!("wrote {} and {}", md_path.display(), html_path.display());

    if !args.check {
        return Ok(Outcome::Success);
    }
    let rules = RuleSet::defaults();
    let mut outcome = Outcome::Success;
    for (path, format, body) in [(&md_path, SourceFormat::Markdown, &markdown), (&html_path, SourceFormat::Html, &html)] {
        let doc = ingest::extract(path.display().to_string(), format, body);
        let report = policylint_core::analyze_default(&doc, &rules);
        eprintln!(
            "check {}: {} (gfi {:.2}, usability {}/6)",
            path.display(),
            report.verdict.as_str(),
            report.stats.gfi,
            report.usability_score
        );
        if report.verdict != Verdict::Compliant {
            outcome = Outcome::NotCompliant;
        }
    }
    Ok(outcome)
}
