//! The `folcheck` command line.
//!
//! Exit status: 0 success, 1 usage error, 2 data error, 3 solver
//! unavailable.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::align::AlignStrategy;
use crate::analysis::dataset_stats;
use crate::dataset::{
    self, extraction_target, make_prompt, split, DatasetError, DatasetRecord, Format,
    NoisyListBuilder, PromptTemplate, SplitSpec,
};
use crate::equiv::{check_entailment, Engine, EntailmentVerdict, EquivConfig, SolverCommand};
use crate::metrics::{score_pairs, ScoreOptions, ScoreReport};
use crate::syntax::{canonical_form, parse, render, Formula, LexemeStyle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "folcheck",
    version,
    about = "Check and score first-order logic translations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula and print it back.
    Parse(ParseArgs),
    /// Score predicted formulas against gold formulas.
    Score(ScoreArgs),
    /// Summary statistics of a corpus.
    Stats(StatsArgs),
    /// Derive training inputs from a corpus.
    Augment(AugmentArgs),
    /// Shuffle a corpus and split it into train/val/test files.
    Split(SplitArgs),
    /// Decide whether premises entail a conclusion.
    Entail(EntailArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Style {
    Symbolic,
    Textual,
}

#[derive(Debug, Args)]
struct ParseArgs {
    /// Print the whitespace-free canonical form.
    #[arg(long, conflicts_with = "tree")]
    canonical: bool,
    /// Print the syntax tree, one node per line.
    #[arg(long)]
    tree: bool,
    #[arg(long, value_enum, default_value = "symbolic")]
    style: Style,
    /// Formula text; `-` or nothing reads standard input.
    text: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Solver,
    Enum,
    Hybrid,
}

#[derive(Debug, Args)]
struct EngineArgs {
    /// Solver command line; defaults to $FOLCHECK_SOLVER, then `z3`.
    #[arg(long)]
    solver_cmd: Option<String>,
    #[arg(long, value_enum, default_value = "solver")]
    engine: EngineArg,
    /// Per-check time limit, e.g. `10s` or `500ms`.
    #[arg(long, default_value = "10s", value_parser = humantime::parse_duration)]
    timeout: Duration,
    /// Largest domain the enumeration engine tries.
    #[arg(long, default_value_t = 3)]
    max_domain: usize,
    /// Parallel checks; defaults to the number of CPUs.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Predictions, one `{"FOL": …}` per line.
    #[arg(long, requires = "gold", conflicts_with = "pairs")]
    pred: Option<PathBuf>,
    /// Gold formulas aligned line by line with `--pred`.
    #[arg(long, requires = "pred")]
    gold: Option<PathBuf>,
    /// Single file of `{"FOL_PRED": …, "FOL_GT": …}` objects.
    #[arg(long, required_unless_present = "pred")]
    pairs: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
    /// Minimum name similarity for predicate alignment.
    #[arg(long, default_value_t = crate::align::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Maximize total similarity instead of greedy alignment.
    #[arg(long)]
    optimal: bool,
    /// Write the per-record predicate alignments as JSON.
    #[arg(long)]
    dump_alignments: Option<PathBuf>,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
    /// Also report exact match on the raw texts.
    #[arg(long)]
    strict_raw: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    corpus: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Predlist,
    Noisy,
    Extract,
    Prompt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TemplateArg {
    Chat,
    Prefix,
}

#[derive(Debug, Args)]
struct AugmentArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Records whose predicates are mixed into each noisy list.
    #[arg(long, default_value_t = dataset::DEFAULT_DISTRACTORS)]
    distractors: usize,
    #[arg(long, value_enum, default_value = "prefix")]
    template: TemplateArg,
    /// Keep symbolic operators in prefix-style targets.
    #[arg(long)]
    symbolic_target: bool,
    input: PathBuf,
    output: PathBuf,
}

#[derive(Debug, Args)]
struct SplitArgs {
    input: PathBuf,
    /// Directory receiving train.jsonl, val.jsonl and test.jsonl.
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.72)]
    train: f64,
    #[arg(long, default_value_t = 0.08)]
    val: f64,
    #[arg(long, default_value_t = 0.20)]
    test: f64,
}

#[derive(Debug, Args)]
struct EntailArgs {
    /// File with one premise formula per line.
    #[arg(long, requires = "conclusion", conflicts_with = "batch")]
    premises: Option<PathBuf>,
    #[arg(long)]
    conclusion: Option<String>,
    /// JSONL of `{"premises": [...], "conclusion": ..., "label": ...}`.
    #[arg(long, required_unless_present = "premises")]
    batch: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    engine: EngineArgs,
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<DatasetError> for Failure {
    fn from(e: DatasetError) -> Self {
        Failure::data(e.to_string())
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::data(format!("{}: {e}", path.display()))
}

type CmdResult = Result<(), Failure>;

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Score(a) => cmd_score(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Augment(a) => cmd_augment(a),
        Command::Split(a) => cmd_split(a),
        Command::Entail(a) => cmd_entail(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("folcheck: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> CmdResult {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::data(format!("stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn cmd_parse(args: ParseArgs) -> CmdResult {
    let text = match args.text.as_deref() {
        Some(t) if t != "-" => t.to_string(),
        _ => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::data(format!("stdin: {e}")))?;
            buf
        }
    };
    let formula = parse(&text).map_err(|e| Failure::data(format!("parse error: {e}")))?;
    let style = match args.style {
        Style::Symbolic => LexemeStyle::Symbolic,
        Style::Textual => LexemeStyle::Textual,
    };
    let out = if args.canonical {
        format!("{}\n", canonical_form(&text))
    } else if args.tree {
        tree(&formula)
    } else {
        format!("{}\n", render(&formula, style))
    };
    emit(&out, None)
}

/// One node per line, children indented by two spaces.
fn tree(f: &Formula) -> String {
    fn walk(f: &Formula, depth: usize, out: &mut String) {
        let label = match f {
            Formula::Atom { .. } => format!("Atom {f}"),
            Formula::Not(_) => "Not".to_string(),
            Formula::Forall(..) | Formula::Exists(..) => {
                let (q, var, _) = f.as_quantifier().expect("quantifier");
                format!("{q:?} {var}")
            }
            _ => {
                let (op, _, _) = f.as_binary().expect("binary");
                format!("{op:?}")
            }
        };
        let _ = writeln!(out, "{}{label}", "  ".repeat(depth));
        for child in f.children() {
            walk(child, depth + 1, out);
        }
    }
    let mut out = String::new();
    walk(f, 0, &mut out);
    out
}

fn workers(requested: Option<usize>) -> Result<usize, Failure> {
    match requested {
        Some(0) => Err(Failure::usage("--workers must be positive")),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Builds the checker configuration; for the solver engine the solver must
/// answer a trivial query first.
fn equiv_config(args: &EngineArgs) -> Result<EquivConfig, Failure> {
    let solver = match &args.solver_cmd {
        Some(cmd) => {
            SolverCommand::parse(cmd).ok_or_else(|| Failure::usage("empty --solver-cmd"))?
        }
        None => SolverCommand::from_env(),
    };
    let cfg = EquivConfig {
        timeout: args.timeout,
        engine: match args.engine {
            EngineArg::Solver => Engine::Solver,
            EngineArg::Enum => Engine::Enumerate,
            EngineArg::Hybrid => Engine::Hybrid,
        },
        max_domain: args.max_domain,
        solver,
        ..EquivConfig::default()
    };
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
    if cfg.engine == Engine::Solver {
        let limit = args.timeout.max(Duration::from_secs(5));
        cfg.solver.probe(limit).map_err(|msg| Failure {
            code: EXIT_SOLVER,
            message: format!("solver unavailable: {msg}"),
        })?;
    }
    Ok(cfg)
}

#[derive(Serialize)]
struct AlignmentDump<'a> {
    index: usize,
    alignment: &'a crate::align::AlignmentMap,
}

fn cmd_score(args: ScoreArgs) -> CmdResult {
    let pairs = match (&args.pred, &args.gold, &args.pairs) {
        (Some(pred), Some(gold), _) => {
            let preds = dataset::load_formulas(pred)?;
            let golds = dataset::load_formulas(gold)?;
            if preds.len() != golds.len() {
                return Err(Failure::data(format!(
                    "{} has {} records but {} has {}",
                    pred.display(),
                    preds.len(),
                    gold.display(),
                    golds.len()
                )));
            }
            preds.into_iter().zip(golds).collect::<Vec<_>>()
        }
        (_, _, Some(path)) => dataset::load_pairs(path)?,
        _ => return Err(Failure::usage("give --pred and --gold, or --pairs")),
    };
    if !(0.0..=1.0).contains(&args.threshold) {
        return Err(Failure::usage("--threshold must lie in [0, 1]"));
    }
    let workers = workers(args.engine.workers)?;
    let cfg = equiv_config(&args.engine)?;
    let opts = ScoreOptions {
        threshold: args.threshold,
        strategy: if args.optimal {
            AlignStrategy::Optimal
        } else {
            AlignStrategy::Greedy
        },
        strict_raw: args.strict_raw,
    };
    let scores =
        score_pairs(&pairs, &cfg, &opts, workers).map_err(|e| Failure::data(e.to_string()))?;
    let report = ScoreReport::from_scores(&scores, args.strict_raw).expect("non-empty");

    if let Some(path) = &args.dump_alignments {
        let dump: Vec<_> = scores
            .iter()
            .enumerate()
            .map(|(index, s)| AlignmentDump {
                index,
                alignment: &s.alignment,
            })
            .collect();
        std::fs::write(path, to_json(&dump)).map_err(|e| io_failure(path, e))?;
    }
    let text = if args.json {
        to_json(&report)
    } else {
        report.to_table()
    };
    emit(&text, args.output.as_deref())
}

fn load_corpus(path: &Path) -> Result<Vec<DatasetRecord>, Failure> {
    let outcome = dataset::load(path, Format::from_path(path))?;
    for e in &outcome.errors {
        eprintln!("folcheck: {}: skipped {e}", path.display());
    }
    Ok(outcome.records)
}

fn cmd_stats(args: StatsArgs) -> CmdResult {
    let records = load_corpus(&args.corpus)?;
    let outcome = dataset_stats(&records).map_err(|e| Failure::data(e.to_string()))?;
    if !outcome.unparseable.is_empty() {
        eprintln!(
            "folcheck: {} record(s) with unparseable formulas: {}",
            outcome.unparseable.len(),
            outcome.unparseable.join(", ")
        );
    }
    let r = &outcome.report;
    let text = if args.json {
        to_json(r)
    } else {
        let rows = [
            ("Records", r.total.to_string()),
            ("Unique predicates", r.unique_predicates.to_string()),
            ("Unique constants", r.unique_constants.to_string()),
            ("Avg. NL length (chars)", format!("{:.2}", r.avg_nl_chars)),
            ("Avg. FOL length (chars)", format!("{:.2}", r.avg_fol_chars)),
            ("Avg. quantifiers", format!("{:.2}", r.avg_quantifiers)),
            ("Avg. depth", format!("{:.2}", r.avg_depth)),
            ("Avg. connectives", format!("{:.2}", r.avg_connectives)),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    };
    emit(&text, None)
}

fn write_lines<T: Serialize>(path: &Path, items: &[T]) -> CmdResult {
    let file = std::fs::File::create(path).map_err(|e| io_failure(path, e))?;
    let mut out = io::BufWriter::new(file);
    dataset::write_jsonl(&mut out, items)
        .and_then(|_| out.flush())
        .map_err(|e| io_failure(path, e))
}

/// Keeps the successes in order and reports the failures on stderr.
fn keep_ok<T>(results: Vec<Result<T, DatasetError>>) -> Vec<T> {
    results
        .into_iter()
        .filter_map(|r| r.map_err(|e| eprintln!("folcheck: skipped {e}")).ok())
        .collect()
}

fn cmd_augment(args: AugmentArgs) -> CmdResult {
    let records = load_corpus(&args.input)?;
    match args.mode {
        Mode::Predlist => {
            let out = keep_ok(
                records
                    .par_iter()
                    .map(dataset::attach_predicate_list)
                    .collect(),
            );
            write_lines(&args.output, &out)
        }
        Mode::Noisy => {
            let builder = NoisyListBuilder::new(&records, args.distractors);
            let results: Vec<_> = records
                .par_iter()
                .map(|r| builder.build(r, args.seed))
                .collect();
            if let Some(Err(e)) = results
                .iter()
                .find(|r| matches!(r, Err(DatasetError::CorpusTooSmall { .. })))
            {
                return Err(Failure::data(e.to_string()));
            }
            write_lines(&args.output, &keep_ok(results))
        }
        Mode::Extract => {
            let out = keep_ok(records.par_iter().map(extraction_target).collect());
            write_lines(&args.output, &out)
        }
        Mode::Prompt => {
            let template = match args.template {
                TemplateArg::Chat => PromptTemplate::chat(),
                TemplateArg::Prefix => PromptTemplate::Prefix {
                    prefix: dataset::DEFAULT_PREFIX.into(),
                    textual_ops: !args.symbolic_target,
                },
            };
            let out: Vec<_> = records
                .par_iter()
                .map(|r| make_prompt(r, &template))
                .collect();
            write_lines(&args.output, &out)
        }
    }
}

fn cmd_split(args: SplitArgs) -> CmdResult {
    let spec = SplitSpec::new(args.train, args.val, args.test, args.seed)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let records = load_corpus(&args.input)?;
    let parts = split(records, &spec);
    std::fs::create_dir_all(&args.out_dir).map_err(|e| io_failure(&args.out_dir, e))?;
    for (name, part) in [
        ("train", &parts.train),
        ("val", &parts.val),
        ("test", &parts.test),
    ] {
        write_lines(&args.out_dir.join(format!("{name}.jsonl")), part)?;
    }
    emit(
        &format!(
            "train {}\nval {}\ntest {}\n",
            parts.train.len(),
            parts.val.len(),
            parts.test.len()
        ),
        None,
    )
}

/// Maps a dataset label onto a verdict name. FOLIO's True/False/Uncertain
/// and the verdict names themselves are accepted.
fn label_verdict(label: &str) -> Option<&'static str> {
    match label.trim().to_ascii_lowercase().as_str() {
        "true" | "entailed" | "entailment" => Some("Entailed"),
        "false" | "contradicted" | "contradiction" => Some("Contradicted"),
        "uncertain" | "unknown" | "neutral" => Some("Neutral"),
        _ => None,
    }
}

fn verdict_name(v: &EntailmentVerdict) -> &'static str {
    match v {
        EntailmentVerdict::Entailed => "Entailed",
        EntailmentVerdict::Contradicted => "Contradicted",
        EntailmentVerdict::Neutral => "Neutral",
        EntailmentVerdict::Unknown(_) => "Unknown",
    }
}

#[derive(Debug, Serialize)]
struct BatchItem {
    line: usize,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct BatchReport {
    n: usize,
    labeled: usize,
    agreed: usize,
    agreement_pct: Option<f64>,
    items: Vec<BatchItem>,
}

fn cmd_entail(args: EntailArgs) -> CmdResult {
    if let Some(path) = &args.batch {
        return entail_batch(path, &args);
    }
    let path = args.premises.as_ref().expect("clap enforces premises");
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let mut premises = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f =
            parse(line).map_err(|e| Failure::data(format!("{}:{}: {e}", path.display(), i + 1)))?;
        premises.push(f);
    }
    let conclusion_text = args
        .conclusion
        .as_deref()
        .expect("clap enforces conclusion");
    let conclusion =
        parse(conclusion_text).map_err(|e| Failure::data(format!("conclusion: {e}")))?;
    let cfg = equiv_config(&args.engine)?;
    let verdict =
        check_entailment(&premises, &conclusion, &cfg).map_err(|e| Failure::data(e.to_string()))?;
    let text = if args.json {
        to_json(
            &serde_json::json!({ "verdict": verdict_name(&verdict), "detail": verdict.to_string() }),
        )
    } else {
        format!("{verdict}\n")
    };
    emit(&text, None)
}

fn batch_item(line: usize, entry: Result<Value, String>, cfg: &EquivConfig) -> BatchItem {
    let mut item = BatchItem {
        line,
        verdict: "Error".into(),
        label: None,
        error: None,
    };
    let parsed = entry.and_then(|v| {
        item.label = v.get("label").and_then(|l| match l {
            Value::String(s) => Some(s.clone()),
            Value::Bool(b) => Some(if *b { "True" } else { "False" }.to_string()),
            _ => None,
        });
        let premises = match v.get("premises") {
            Some(Value::Array(items)) => items
                .iter()
                .map(|p| {
                    p.as_str()
                        .ok_or("premises must be strings")
                        .map(str::to_string)
                })
                .collect::<Result<Vec<_>, _>>()?,
            Some(Value::String(s)) => s.lines().map(str::to_string).collect(),
            _ => return Err("missing \"premises\"".to_string()),
        };
        let conclusion = v
            .get("conclusion")
            .and_then(Value::as_str)
            .ok_or("missing \"conclusion\"")?
            .to_string();
        let premises = premises
            .iter()
            .filter(|p| !p.trim().is_empty())
            .enumerate()
            .map(|(i, p)| parse(p).map_err(|e| format!("premise {}: {e}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let conclusion = parse(&conclusion).map_err(|e| format!("conclusion: {e}"))?;
        check_entailment(&premises, &conclusion, cfg).map_err(|e| e.to_string())
    });
    match parsed {
        Ok(verdict) => item.verdict = verdict_name(&verdict).into(),
        Err(e) => item.error = Some(e),
    }
    item
}

fn entail_batch(path: &Path, args: &EntailArgs) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let entries: Vec<(usize, Result<Value, String>)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, serde_json::from_str(l).map_err(|e| e.to_string())))
        .collect();
    if entries.is_empty() {
        return Err(Failure::data(format!("{}: no records", path.display())));
    }
    let workers = workers(args.engine.workers)?;
    let cfg = equiv_config(&args.engine)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let items: Vec<BatchItem> = pool.install(|| {
        entries
            .into_par_iter()
            .map(|(line, entry)| batch_item(line, entry, &cfg))
            .collect()
    });

    let mut labeled = 0;
    let mut agreed = 0;
    for item in &items {
        if let Some(e) = &item.error {
            eprintln!("folcheck: {}:{}: {e}", path.display(), item.line);
        }
        if let Some(expected) = item.label.as_deref().and_then(label_verdict) {
            labeled += 1;
            if item.verdict == expected {
                agreed += 1;
            }
        }
    }
    let report = BatchReport {
        n: items.len(),
        labeled,
        agreed,
        agreement_pct: (labeled > 0).then(|| 100.0 * agreed as f64 / labeled as f64),
        items,
    };
    let text = if args.json {
        to_json(&report)
    } else {
        let mut out = String::new();
        for item in &report.items {
            let _ = write!(out, "line {}: {}", item.line, item.verdict);
            if let Some(label) = &item.label {
                let _ = write!(out, " (label {label})");
            }
            out.push('\n');
        }
        match report.agreement_pct {
            Some(p) => {
                let _ = writeln!(out, "agreement: {p:.2}% ({agreed}/{labeled})");
            }
            None => out.push_str("agreement: n/a (no labels)\n"),
        }
        out
    };
    emit(&text, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(label_verdict("True"), Some("Entailed"));
        assert_eq!(label_verdict("false"), Some("Contradicted"));
        assert_eq!(label_verdict("Uncertain"), Some("Neutral"));
        assert_eq!(label_verdict("maybe"), None);
    }

    #[test]
    fn tree_listing() {
        assert_eq!(tree(&parse("P(a)").unwrap()), "Atom P(a)\n");
        assert_eq!(
            tree(&parse("¬∀x (P(x) ∧ Q)").unwrap()),
            "Not\n  Forall x\n    And\n      Atom P(x)\n      Atom Q()\n"
        );
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["folcheck", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["folcheck", "score"]), EXIT_USAGE);
    }
}
