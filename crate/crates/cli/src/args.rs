//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use policylint_core::ingest::FormatHint;

#[derive(Debug, Parser)]
#[command(name = "policylint", version, about = "Lint privacy policies for readability and GDPR coverage, and generate short usable ones")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Text,
    Markdown,
    Html,
}

impl From<InputFormat> for FormatHint {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Auto => FormatHint::Auto,
            InputFormat::Text => FormatHint::Text,
            InputFormat::Markdown => FormatHint::Markdown,
            InputFormat::Html => FormatHint::Html,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Rules file whose blocks override the embedded defaults.
    #[arg(long, global = true, value_name = "FILE")]
    pub rules: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Never touch the network; URLs are served from the cache or fail.
    #[arg(long, global = true)]
    pub no_network: bool,

    /// Per-request timeout in seconds.
    #[arg(long, global = true, value_name = "SECS", default_value_t = 20)]
    pub fetch_timeout: u64,

    /// Largest response body accepted, in bytes.
    #[arg(long, global = true, value_name = "BYTES", default_value_t = 5 * 1024 * 1024)]
    pub max_bytes: u64,

    /// User-Agent header for fetches.
    #[arg(long, global = true, value_name = "STRING")]
    pub user_agent: Option<String>,

    /// Fetch cache directory.
    #[arg(long, global = true, env = "POLICYLINT_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Complex-word exclusions: `all`, `none`, or a comma list such as
    /// `proper_nouns=off,compounds=on`.
    #[arg(long, global = true, value_name = "TOGGLES")]
    pub exclusions: Option<String>,

    /// Minimum extracted words before a source counts as empty.
    #[arg(long, global = true, value_name = "N", default_value_t = policylint_core::ingest::DEFAULT_MIN_WORDS)]
    pub min_words: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one policy; exits 0 if compliant, 1 if not, 2 on error.
    Analyze(AnalyzeArgs),
    /// Analyze every source listed in a manifest and summarize.
    Corpus(CorpusArgs),
    /// Generate a policy from a company profile.
    Template(TemplateArgs),
    /// Print the effective rules.
    Rules,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// File path, http(s) URL, or `-` for standard input.
    #[arg(required = true, value_name = "SOURCE")]
    pub sources: Vec<String>,

    /// Treat several sources as pages of one policy and join them.
    #[arg(long)]
    pub concat: bool,

    /// The source is a landing page; follow its privacy policy link.
    #[arg(long)]
    pub discover: bool,

    #[arg(long, value_enum, default_value = "auto")]
    pub input_format: InputFormat,

    /// Wrap JSON output with a generation timestamp.
    #[arg(long)]
    pub envelope: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// One source per line; `#` starts a comment; paths are relative to the manifest.
    #[arg(value_name = "MANIFEST")]
    pub manifest: PathBuf,

    /// Worker threads (0 uses all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,

    #[arg(long, value_enum, default_value = "auto")]
    pub input_format: InputFormat,
}

#[derive(Debug, Args)]
pub struct TemplateArgs {
    /// Company profile in `key = value` form.
    #[arg(value_name = "CONFIG")]
    pub config: PathBuf,

    /// Directory or URL prefix that icon ids resolve against.
    #[arg(long, value_name = "DIR", default_value = "icons")]
    pub theme_dir: String,

    /// Section background colour.
    #[arg(long, value_name = "COLOUR", default_value = "#eeeeee")]
    pub background: String,

    /// Re-analyze both renderings and fail unless they are compliant.
    #[arg(long)]
    pub check: bool,
}
