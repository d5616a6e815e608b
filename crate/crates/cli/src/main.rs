//! `tsw`: lexical simplification, simplification metrics, sentence
//! alignment and translation drift from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tsw_core::corpus::{self, tokenize, SimilarityBand, TokenizedSentence};
use tsw_core::drift::{self, Bins, SentenceEmbeddings};
use tsw_core::lexmetrics::{self, KGrid};
use tsw_core::lexres::{self, EmbeddingTable, FreqLexicon, ResourcePaths, Stoplist};
use tsw_core::pipeline::{
    self, CandidateFileSuggester, NearestNeighbourSuggester, PipelineConfig, PipelineInput, Suggester,
    SynonymSuggester,
};
use tsw_core::report::{fixed6, Report, Value};
use tsw_core::sentmetrics::{self, edit_distance, BleuConfig, SentOptions, SentResources};
use tsw_core::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

const SYNONYMS_FILE: &str = "synonyms.tsv";

#[derive(Parser)]
#[command(name = "tsw", version, about = "Text simplification workbench")]
struct Cli {
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Suggest simpler substitutes for the most complex word of each sentence
    Simplify(SimplifyArgs),
    /// Score ranked substitutes against a gold TSV
    EvalLexical(EvalLexicalArgs),
    /// Score system outputs with BLEU, SARI and friends
    EvalSentence(EvalSentenceArgs),
    /// Align two sentence lists one-to-one
    Align(AlignArgs),
    /// Measure within-pair similarity drift after translation
    Drift(DriftArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuggesterKind {
    /// synonyms.tsv in the resource directory
    Synonyms,
    /// nearest neighbours in the embedding table
    Knn,
    /// candidates read from a Predictions TSV file (--candidates)
    File,
}

#[derive(Args)]
struct SimplifyArgs {
    /// One sentence per line; `sentence<TAB>complex word` pins the target
    #[arg(long)]
    input: PathBuf,
    /// Directory holding freq.tsv, cefr.tsv, morph.tsv, embeddings.vec
    #[arg(long)]
    resources: PathBuf,
    #[arg(long, value_enum, default_value = "synonyms")]
    suggester: SuggesterKind,
    /// Candidate file for `--suggester file`
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Pipeline config (`key = value` lines)
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct EvalLexicalArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Comma-separated K values used for every metric family
    #[arg(long, value_delimiter = ',')]
    k_grid: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalSentenceArgs {
    /// Source sentences, one per line (defaults to the sources in --refs)
    #[arg(long)]
    source: Option<PathBuf>,
    /// System outputs, one per line
    #[arg(long)]
    output: PathBuf,
    /// Parallel JSONL with the references
    #[arg(long)]
    refs: PathBuf,
    /// Skip pairs whose references all equal the source
    #[arg(long)]
    exclude_identity: bool,
    /// Add-one smoothing for BLEU orders 2 and up
    #[arg(long)]
    smoothing: bool,
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    #[arg(long)]
    case_sensitive: bool,
    /// Frequency lexicon, enables iSiM
    #[arg(long)]
    freq: Option<PathBuf>,
    /// Stoplist for iSiM (built-in English list by default)
    #[arg(long)]
    stoplist: Option<PathBuf>,
    /// Word embeddings, enables the embedding F1 column
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Similarity {
    /// Dice coefficient of lowercased token sets
    Dice,
    /// 1 - edit distance / longer length
    Edit,
}

#[derive(Args)]
struct AlignArgs {
    #[arg(long)]
    src: PathBuf,
    #[arg(long)]
    tgt: PathBuf,
    #[arg(long, default_value_t = 0.3)]
    lo: f64,
    #[arg(long, default_value_t = 0.95)]
    hi: f64,
    #[arg(long, value_enum, default_value = "dice")]
    sim: Similarity,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DriftArgs {
    /// Original Parallel JSONL
    #[arg(long)]
    orig: PathBuf,
    /// Translated Parallel JSONL, same ids
    #[arg(long)]
    trans: PathBuf,
    /// Sentence embeddings of the original corpus (`id:src` / `id:ref` rows)
    #[arg(long)]
    orig_emb: PathBuf,
    #[arg(long)]
    trans_emb: PathBuf,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    /// Histogram CSV of the cosine deltas
    #[arg(long)]
    cos_hist: Option<PathBuf>,
    /// Histogram CSV of the edit-distance deltas
    #[arg(long)]
    edit_hist: Option<PathBuf>,
    /// Summary JSON (stdout by default)
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MissingResource(_) => EXIT_RESOURCE,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::data(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::data(format!("stdout: {e}"))),
    }
}

fn require(dir: &Path, name: &str) -> CliResult<PathBuf> {
    let path = dir.join(name);
    if path.is_file() {
        Ok(path)
    } else {
        Err(Failure {
            code: EXIT_RESOURCE,
            message: format!("missing resource file {}", path.display()),
        })
    }
}

fn simplify(args: &SimplifyArgs) -> CliResult {
    let dir = &args.resources;
    let paths = ResourcePaths {
        freq: Some(require(dir, lexres::FREQ_FILE)?),
        cefr: Some(require(dir, lexres::CEFR_FILE)?),
        morph: Some(require(dir, lexres::MORPH_FILE)?),
        embeddings: Some(require(dir, lexres::EMBEDDINGS_FILE)?),
    };
    let config = match &args.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::data(format!("{}: {e}", args.input.display())))?;
    let resources = lexres::load_resources(&paths)?;

    let synonyms;
    let file;
    let knn;
    let suggester: &dyn Suggester = match args.suggester {
        SuggesterKind::Synonyms => {
            synonyms = SynonymSuggester::load(&require(dir, SYNONYMS_FILE)?)?;
            &synonyms
        }
        SuggesterKind::File => {
            let path = args
                .candidates
                .as_deref()
                .ok_or_else(|| Failure::usage("--suggester file needs --candidates"))?;
            file = CandidateFileSuggester::load(path)?;
            &file
        }
        SuggesterKind::Knn => {
            knn = NearestNeighbourSuggester {
                table: resources.embeddings()?,
                k: config.knn_k,
            };
            &knn
        }
    };

    let inputs: Vec<PipelineInput> = text
        .lines()
        .map(|line| {
            let line = line.trim_end_matches('\r');
            let mut fields = line.split('\t');
            let sentence = tokenize(fields.next().unwrap_or_default().trim());
            let complex_word = fields
                .next()
                .map(str::trim)
                .filter(|w| !w.is_empty())
                .map(String::from);
            PipelineInput {
                sentence,
                complex_word,
            }
        })
        .collect();
    let results = pipeline::simplify_batch(&inputs, &resources, suggester, &config)?;
    let mut out = String::new();
    for (input, result) in inputs.iter().zip(&results) {
        out.push_str(&result.to_prediction(&input.sentence).to_tsv_line());
        out.push('\n');
    }
    emit(args.out.as_deref(), &out)
}

fn table(report: &Report, scale: f64, decimals: usize) -> String {
    let mut out = String::new();
    for (k, v) in report.iter() {
        let cell = match v {
            Value::Num(x) => format!("{:.*}", decimals, x * scale),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Obj(_) => continue,
        };
        out.push_str(&format!("{k:<20}{cell:>12}\n"));
    }
    out
}

fn eval_lexical(args: &EvalLexicalArgs) -> CliResult {
    let grid = match &args.k_grid {
        Some(ks) => KGrid::uniform(ks).map_err(|e| Failure::usage(e.to_string()))?,
        None => KGrid::default(),
    };
    let report = lexmetrics::evaluate_lexical(&args.gold, &args.pred, &grid)?.to_report();
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Table => table(&report, 1.0, 3),
    };
    emit(args.out.as_deref(), &text)
}

fn eval_sentence(args: &EvalSentenceArgs) -> CliResult {
    if args.max_n == 0 {
        return Err(Failure::usage("--max-n must be at least 1"));
    }
    let freq = args.freq.as_deref().map(FreqLexicon::load).transpose()?;
    let stoplist = match &args.stoplist {
        Some(p) => Stoplist::load(p)?,
        None => Stoplist::english(),
    };
    let embeddings = args.embeddings.as_deref().map(EmbeddingTable::load).transpose()?;
    let resources = SentResources {
        freq: freq.as_ref().map(|f| (f, &stoplist)),
        embeddings: embeddings.as_ref(),
    };
    let options = SentOptions {
        bleu: BleuConfig {
            max_n: args.max_n,
            smoothing: args.smoothing,
        },
        exclude_identity: args.exclude_identity,
        lowercase: !args.case_sensitive,
    };
    let report = sentmetrics::evaluate_sentence_files(
        args.source.as_deref(),
        &args.output,
        &args.refs,
        resources,
        &options,
    )?
    .to_report();
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Table => table(&report, 100.0, 2),
    };
    emit(args.out.as_deref(), &text)
}

fn edit_similarity(a: &TokenizedSentence, b: &TokenizedSentence) -> f64 {
    let longest = a.raw().chars().count().max(b.raw().chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - edit_distance(a.raw(), b.raw()) as f64 / longest as f64
}

fn align(args: &AlignArgs) -> CliResult {
    let band = SimilarityBand::new(args.lo, args.hi).map_err(|e| Failure::usage(e.to_string()))?;
    let src: Vec<TokenizedSentence> = corpus::load_lines(&args.src)?
        .iter()
        .map(|l| tokenize(l))
        .collect();
    let tgt: Vec<TokenizedSentence> = corpus::load_lines(&args.tgt)?
        .iter()
        .map(|l| tokenize(l))
        .collect();
    let sim = match args.sim {
        Similarity::Dice => corpus::token_dice,
        Similarity::Edit => edit_similarity,
    };
    let matches = corpus::align_one_to_one(&src, &tgt, sim, band)?;
    if matches.is_empty() && !src.is_empty() && !tgt.is_empty() {
        eprintln!(
            "warning: no sentence pair has a similarity within [{}, {}]",
            args.lo, args.hi
        );
    }
    let mut out = String::new();
    for m in &matches {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            m.src + 1,
            m.tgt + 1,
            fixed6(m.similarity),
            src[m.src].raw(),
            tgt[m.tgt].raw()
        ));
    }
    emit(args.out.as_deref(), &out)
}

fn drift_cmd(args: &DriftArgs) -> CliResult {
    if args.bins == 0 {
        return Err(Failure::usage("--bins must be at least 1"));
    }
    let orig = corpus::load_parallel(&args.orig)?;
    let trans = corpus::load_parallel(&args.trans)?;
    let orig_emb = SentenceEmbeddings::load(&args.orig_emb)?;
    let trans_emb = SentenceEmbeddings::load(&args.trans_emb)?;
    let pairs = drift::compute_drift(&orig, &trans, &orig_emb, &trans_emb)?;
    let report = drift::drift_report(&pairs)?;
    if let Some(path) = &args.cos_hist {
        let values: Vec<f64> = pairs.iter().map(|p| p.delta_cos()).collect();
        emit(
            Some(path),
            &drift::histogram(&values, &Bins::Count(args.bins))?.to_csv(),
        )?;
    }
    if let Some(path) = &args.edit_hist {
        let values: Vec<f64> = pairs.iter().map(|p| p.delta_edit() as f64).collect();
        emit(
            Some(path),
            &drift::histogram(&values, &Bins::Count(args.bins))?.to_csv(),
        )?;
    }
    emit(args.out.as_deref(), &report.to_json())
}

fn run(cli: Cli) -> CliResult {
    #[cfg(feature = "parallel")]
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Simplify(a) => simplify(a),
        Command::EvalLexical(a) => eval_lexical(a),
        Command::EvalSentence(a) => eval_sentence(a),
        Command::Align(a) => align(a),
        Command::Drift(a) => drift_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
