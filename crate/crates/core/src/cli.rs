//! Command-line front end: `validate`, `audit`, `score` and `generate`.
//!
//! Settings come from an optional TOML config file, then command-line flags
//! override individual fields. Relative paths in the config file resolve
//! against the file's own directory.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 configuration or validation
//! error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::audit::{aspect_context, run_audit, score_at_level, AuditError, AuditSettings};
use crate::corpus::{load_corpus, Corpus, CorpusError, Engine};
use crate::metrics::{transform_stance, GainForm, Level};
use crate::report::{build_bundle, fmt_full, summary_text, EngineNames, ReportError, RunInfo};
use crate::sentiment::{sha256_hex, Lexicon, LexiconError, REFERENCE_LEXICON_TSV};
use crate::synth::{generate, Shape};

pub const THREADS_ENV: &str = "AUDIT_THREADS";
pub const DEFAULT_SEED: u64 = 20190101;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("lexicon: {0}")]
    Lexicon(#[from] LexiconError),
    #[error("score: no document with id '{0}'")]
    UnknownDoc(String),
    #[error("audit: {0}")]
    Audit(AuditError),
    #[error("report: {0}")]
    Report(#[from] ReportError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Corpus(_) | CliError::Lexicon(_) | CliError::UnknownDoc(_) => 2,
            CliError::Audit(AuditError::MissingTriples | AuditError::NoLevels) => 2,
            CliError::Audit(_) | CliError::Report(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        CliError::Audit(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "serp-audit", version, about = "Audit two search engines' result slates for sentiment bias")]
pub struct Cli {
    /// TOML config file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load the corpus and run every pairing and format check.
    Validate(InputArgs),
    /// Run the full audit and write the report bundle.
    Audit {
        #[command(flatten)]
        inputs: InputArgs,
        /// Output directory of the report bundle.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print per-level polarity of one document.
    Score {
        #[command(flatten)]
        inputs: InputArgs,
        doc_id: String,
    },
    /// Write a synthetic corpus.
    Generate {
        #[arg(long, value_enum, default_value_t = ShapeArg::Mini)]
        shape: ShapeArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Mini,
    Full,
}

#[derive(Debug, Clone, Default, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub docs: Option<PathBuf>,
    #[arg(long)]
    pub topics: Option<PathBuf>,
    #[arg(long)]
    pub triples: Option<PathBuf>,
    /// Lexicon TSV; the bundled reference lexicon when omitted.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Comma-separated subset of doc,sent,aspect.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<Level>>,
    /// linear or exp.
    #[arg(long)]
    pub gain: Option<GainForm>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// On-disk config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub documents: Option<PathBuf>,
    pub topics: Option<PathBuf>,
    pub triples: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub levels: Option<Vec<String>>,
    pub gain: Option<String>,
    pub alpha: Option<f64>,
    pub seed: Option<u64>,
    pub engine_a: Option<String>,
    pub engine_b: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: ConfigFile =
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.documents, &mut cfg.topics, &mut cfg.triples, &mut cfg.lexicon, &mut cfg.out]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub documents: PathBuf,
    pub topics: PathBuf,
    pub triples: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub levels: Vec<Level>,
    pub gain: GainForm,
    pub alpha: f64,
    pub seed: u64,
    pub names: EngineNames,
}

impl RunConfig {
    /// Merge config file and flags; flags win.
    pub fn resolve(file: ConfigFile, args: &InputArgs, out: Option<&Path>) -> Result<RunConfig, CliError> {
        let missing = |what: &str| CliError::Config(format!("no {what} file given (--{what} or config)"));
        let levels = match (&args.levels, &file.levels) {
            (Some(l), _) => l.clone(),
            (None, Some(l)) => l
                .iter()
                .map(|s| s.parse::<Level>())
                .collect::<Result<_, _>>()
                .map_err(CliError::Config)?,
            (None, None) => Level::ALL.to_vec(),
        };
        let gain = match (args.gain, &file.gain) {
            (Some(g), _) => g,
            (None, Some(g)) => g.parse().map_err(CliError::Config)?,
            (None, None) => GainForm::Linear,
        };
        let defaults = EngineNames::default();
        let cfg = RunConfig {
            documents: args.docs.clone().or(file.documents).ok_or_else(|| missing("docs"))?,
            topics: args.topics.clone().or(file.topics).ok_or_else(|| missing("topics"))?,
            triples: args.triples.clone().or(file.triples),
            lexicon: args.lexicon.clone().or(file.lexicon),
            out: out.map(Path::to_path_buf).or(file.out),
            levels,
            gain,
            alpha: args.alpha.or(file.alpha).unwrap_or(crate::stats::ALPHA),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            names: EngineNames {
                a: file.engine_a.unwrap_or(defaults.a),
                b: file.engine_b.unwrap_or(defaults.b),
            },
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Config(format!("alpha {} outside (0, 1)", self.alpha)));
        }
        if self.levels.is_empty() {
            return Err(CliError::Config("no levels requested".into()));
        }
        if self.levels.contains(&Level::Aspect) && self.triples.is_none() {
            return Err(CliError::Config("aspect level requested without a triples file".into()));
        }
        Ok(())
    }

    pub fn settings(&self) -> AuditSettings {
        AuditSettings { levels: self.levels.clone(), gain: self.gain, alpha: self.alpha }
    }

    fn lexicon_bytes(&self) -> Result<Vec<u8>, CliError> {
        match &self.lexicon {
            Some(p) => fs::read(p).map_err(|source| LexiconError::Io { path: p.clone(), source }.into()),
            None => Ok(REFERENCE_LEXICON_TSV.as_bytes().to_vec()),
        }
    }

    pub fn load_lexicon(&self) -> Result<Lexicon, CliError> {
        let bytes = self.lexicon_bytes()?;
        let text = String::from_utf8(bytes).map_err(|_| CliError::Config("lexicon is not UTF-8".into()))?;
        Ok(Lexicon::parse(&text)?)
    }

    pub fn load_corpus(&self) -> Result<Corpus, CliError> {
        Ok(load_corpus(&self.documents, &self.topics, self.triples.as_deref())?)
    }

    /// Hash of the settings plus input file contents. Paths never enter it.
    pub fn checksum(&self) -> Result<String, CliError> {
        let hash = |p: &Path| {
            fs::read(p)
                .map(|b| sha256_hex(&b))
                .map_err(|source| CliError::Io { context: format!("reading {}", p.display()), source })
        };
        let mut canon = String::new();
        let levels: Vec<&str> = self.levels.iter().map(|l| l.key()).collect();
        let _ = writeln!(canon, "levels={}", levels.join(","));
        let _ = writeln!(canon, "gain={}", self.gain.key());
        let _ = writeln!(canon, "alpha={}", fmt_full(self.alpha));
        let _ = writeln!(canon, "seed={}", self.seed);
        let _ = writeln!(canon, "engine_a={}", self.names.a);
        let _ = writeln!(canon, "engine_b={}", self.names.b);
        let _ = writeln!(canon, "documents={}", hash(&self.documents)?);
        let _ = writeln!(canon, "topics={}", hash(&self.topics)?);
        match &self.triples {
            Some(p) => {
                let _ = writeln!(canon, "triples={}", hash(p)?);
            }
            None => canon.push_str("triples=none\n"),
        }
        let _ = writeln!(canon, "lexicon={}", sha256_hex(&self.lexicon_bytes()?));
        Ok(sha256_hex(canon.as_bytes()))
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("{THREADS_ENV}='{raw}' is not a positive integer")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn io_err(context: &str) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { context: context.to_string(), source }
}

pub fn cmd_validate(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let corpus = cfg.load_corpus()?;
    cfg.load_lexicon()?;
    writeln!(
        out,
        "ok: {} documents ({}: {}, {}: {}), {} topics, {} queries, {} triples",
        corpus.documents().len(),
        cfg.names.a,
        corpus.document_count(Engine::A),
        cfg.names.b,
        corpus.document_count(Engine::B),
        corpus.topics().count(),
        corpus.query_count(),
        corpus.triple_count()
    )
    .map_err(io_err("stdout"))
}

/// Run the audit and return the bundle without touching the output directory.
pub fn audit_bundle(cfg: &RunConfig) -> Result<(crate::report::ReportBundle, String), CliError> {
    let corpus = cfg.load_corpus()?;
    let lexicon = cfg.load_lexicon()?;
    let checksum = cfg.checksum()?;
    let results = thread_pool()?.install(|| run_audit(&corpus, &lexicon, &cfg.settings()))?;
    let info = RunInfo {
        run_id: checksum[..16].to_string(),
        config_checksum: checksum.clone(),
        lexicon_checksum: sha256_hex(&cfg.lexicon_bytes()?),
        names: cfg.names.clone(),
        topic_titles: corpus.topics().map(|t| (t.topic_id.clone(), t.title.clone())).collect(),
    };
    let bundle = build_bundle(&results, &info)?;
    Ok((bundle, summary_text(&results, &cfg.names)))
}

pub fn cmd_audit(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let dir = cfg.out.clone().ok_or_else(|| CliError::Config("no output directory (--out or config)".into()))?;
    let (bundle, summary) = audit_bundle(cfg)?;
    bundle.write_to(&dir)?;
    write!(out, "{summary}").map_err(io_err("stdout"))?;
    writeln!(out, "\nrun {}: {} files written to {}", bundle.run_id, bundle.paths().count() + 1, dir.display())
        .map_err(io_err("stdout"))
}

pub fn cmd_score(cfg: &RunConfig, doc_id: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let corpus = cfg.load_corpus()?;
    let lexicon = cfg.load_lexicon()?;
    let docs: Vec<_> = corpus.documents_with_id(doc_id).collect();
    if docs.is_empty() {
        return Err(CliError::UnknownDoc(doc_id.to_string()));
    }
    let mut text = String::new();
    for doc in docs {
        let topic = corpus.topic(&doc.topic_id).expect("validated corpus");
        let _ = writeln!(
            text,
            "{} [{}] topic={} query={} rank={} stance={:+}",
            doc.doc_id,
            cfg.names.get(doc.engine),
            doc.topic_id,
            doc.query,
            doc.rank,
            topic.stance_sign
        );
        for &level in &cfg.levels {
            let raw = score_at_level(&corpus, &lexicon, doc, level);
            let transformed = transform_stance(topic, raw);
            let _ = writeln!(text, "  {:<7} raw={} transformed={}", level.key(), raw, transformed);
        }
        if cfg.levels.contains(&Level::Aspect) {
            let ctx = aspect_context(&corpus, doc);
            let words: Vec<String> =
                ctx.related_words.iter().map(|w| format!("{} -{}-> {}", w.word, w.relation, w.keyword)).collect();
            let _ = writeln!(text, "  aspect words: {}", if words.is_empty() { "(none)".into() } else { words.join(", ") });
        }
    }
    out.write_all(text.as_bytes()).map_err(io_err("stdout"))
}

pub fn cmd_generate(shape: ShapeArg, seed: u64, dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let shape = match shape {
        ShapeArg::Mini => Shape::mini(),
        ShapeArg::Full => Shape::full(),
    };
    let synthetic = generate(&shape, seed);
    synthetic.write_to(dir).map_err(io_err("writing corpus"))?;
    writeln!(
        out,
        "wrote {} documents, {} topics, {} triples to {}",
        synthetic.documents.len(),
        synthetic.topics.len(),
        synthetic.triples.len(),
        dir.display()
    )
    .map_err(io_err("stdout"))
}

/// Execute a parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Validate(inputs) => cmd_validate(&RunConfig::resolve(file, &inputs, None)?, out),
        Command::Audit { inputs, out: dir } => cmd_audit(&RunConfig::resolve(file, &inputs, dir.as_deref())?, out),
        Command::Score { inputs, doc_id } => cmd_score(&RunConfig::resolve(file, &inputs, None)?, &doc_id, out),
        Command::Generate { shape, seed, out: dir } => {
            cmd_generate(shape, seed.or(file.seed).unwrap_or(DEFAULT_SEED), &dir, out)
        }
    }
}

/// Parse `args`, run, report errors on stderr and return the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
