//! NL–FOL corpora: loading JSON/JSONL, seeded splits, and the augmented
//! inputs used for training experiments (predicate lists, noisy lists,
//! extraction targets, prompts).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::analysis::extract_signature;
use crate::syntax::{parse, render, LexemeStyle, ParseError};

/// Prefix used by the prefix-style prompt template.
pub const DEFAULT_PREFIX: &str =
    "translate English natural language statements into first-order logic (FOL): ";

/// Marker every chat-style answer begins with.
pub const FORMULA_MARKER: &str = "Φ=";

pub const DEFAULT_SYSTEM_PROMPT: &str = "Translate the user's English statement into a single \
first-order logic formula. Use only these operators: ∀ (for all), ∃ (there exists), ¬ (not), \
∧ (and), ∨ (or), ⊕ (exclusive or), → (implies), ↔ (if and only if). Write predicates as \
Name(arg, ...). Begin your answer with Φ=.";

pub const DEFAULT_DISTRACTORS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub id: String,
    #[serde(rename = "NL")]
    pub nl: String,
    #[serde(rename = "FOL")]
    pub fol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicates: Option<Vec<String>>,
    #[serde(rename = "lang", default, skip_serializing_if = "Option::is_none")]
    pub language: Option<String>,
    /// Keys this crate does not interpret, kept for round-tripping.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl DatasetRecord {
    pub fn new(id: impl Into<String>, nl: impl Into<String>, fol: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            nl: nl.into(),
            fol: fol.into(),
            predicates: None,
            language: None,
            extra: Map::new(),
        }
    }

    /// The language tag, `en` when absent.
    pub fn language(&self) -> &str {
        self.language.as_deref().unwrap_or("en")
    }

    /// Builds a record from one JSON object. `fallback_id` is used when the
    /// object has no `id`.
    pub fn from_json(value: Value, fallback_id: &str) -> Result<Self, String> {
        let Value::Object(mut map) = value else {
            return Err("expected a JSON object".into());
        };
        let nl = take_text(&mut map, "NL")?;
        let fol = take_text(&mut map, "FOL")?;
        let id = match map.remove("id") {
            None | Some(Value::Null) => fallback_id.to_string(),
            Some(Value::String(s)) => s,
            Some(Value::Number(n)) => n.to_string(),
            Some(_) => return Err("\"id\" must be a string or number".into()),
        };
        let predicates = match map.remove("predicates") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => {
                let mut names = BTreeSet::new();
                for item in items {
                    match item {
                        Value::String(s) => {
                            names.insert(s);
                        }
                        _ => return Err("\"predicates\" must hold strings".into()),
                    }
                }
                Some(names.into_iter().collect())
            }
            Some(_) => return Err("\"predicates\" must be an array".into()),
        };
        let language = match map.remove("lang") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s),
            Some(_) => return Err("\"lang\" must be a string".into()),
        };
        Ok(Self {
            id,
            nl,
            fol,
            predicates,
            language,
            extra: map,
        })
    }
}

fn take_text(map: &mut Map<String, Value>, key: &str) -> Result<String, String> {
    match map.remove(key) {
        Some(Value::String(s)) if !s.trim().is_empty() => Ok(s),
        Some(Value::String(_)) => Err(format!("\"{key}\" is empty")),
        Some(_) => Err(format!("\"{key}\" must be a string")),
        None => Err(format!("missing \"{key}\"")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// One JSON array of objects.
    Json,
    /// One object per line.
    Jsonl,
}

impl Format {
    /// `.json` means a JSON array, anything else JSON Lines.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Jsonl,
        }
    }
}

/// One rejected line (JSONL) or array element (JSON), 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {}", path.display(), describe_format_errors(errors))]
    Format {
        path: PathBuf,
        errors: Vec<LineError>,
    },
    #[error("record {id}: {error}")]
    Parse { id: String, error: ParseError },
    #[error("corpus too small: {needed} records needed, {available} usable")]
    CorpusTooSmall { needed: usize, available: usize },
    #[error("invalid split: {0}")]
    InvalidSplit(String),
}

fn describe_format_errors(errors: &[LineError]) -> String {
    if errors.is_empty() {
        return "no records".into();
    }
    errors
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Default)]
pub struct LoadOutcome {
    pub records: Vec<DatasetRecord>,
    /// Lines skipped because they did not hold a valid record.
    pub errors: Vec<LineError>,
}

fn read_text(path: &Path) -> Result<String, DatasetError> {
    std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

type Entry = (usize, Result<Value, String>);

/// Splits a file into JSON values tagged with their 1-based position;
/// malformed entries come back as errors.
fn json_entries(path: &Path, format: Format) -> Result<Vec<Entry>, DatasetError> {
    let text = read_text(path)?;
    let entries = match format {
        Format::Jsonl => text
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .map(|(i, line)| (i + 1, serde_json::from_str(line).map_err(|e| e.to_string())))
            .collect(),
        Format::Json => {
            if text.trim().is_empty() {
                Vec::new()
            } else {
                match serde_json::from_str::<Value>(&text) {
                    Ok(Value::Array(items)) => items
                        .into_iter()
                        .enumerate()
                        .map(|(i, v)| (i + 1, Ok(v)))
                        .collect(),
                    Ok(_) => {
                        return Err(DatasetError::Format {
                            path: path.to_path_buf(),
                            errors: vec![LineError {
                                line: 1,
                                message: "expected a JSON array of records".into(),
                            }],
                        })
                    }
                    Err(e) => {
                        return Err(DatasetError::Format {
                            path: path.to_path_buf(),
                            errors: vec![LineError {
                                line: e.line(),
                                message: e.to_string(),
                            }],
                        })
                    }
                }
            }
        }
    };
    Ok(entries)
}

/// Loads a corpus. Bad lines are reported in the outcome; a file with no
/// valid record at all is a `Format` error.
pub fn load(path: &Path, format: Format) -> Result<LoadOutcome, DatasetError> {
    let mut outcome = LoadOutcome::default();
    for (line, entry) in json_entries(path, format)? {
        match entry.and_then(|v| DatasetRecord::from_json(v, &line.to_string())) {
            Ok(record) => outcome.records.push(record),
            Err(message) => outcome.errors.push(LineError { line, message }),
        }
    }
    if outcome.records.is_empty() {
        return Err(DatasetError::Format {
            path: path.to_path_buf(),
            errors: outcome.errors,
        });
    }
    Ok(outcome)
}

/// Reads the strings under `key` from every entry. Any bad entry fails the
/// whole file, since positions must line up with a partner file.
fn load_column(
    path: &Path,
    format: Format,
    keys: &[&str],
) -> Result<Vec<Vec<String>>, DatasetError> {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (line, entry) in json_entries(path, format)? {
        let row = entry.and_then(|v| {
            let Value::Object(mut map) = v else {
                return Err("expected a JSON object".to_string());
            };
            keys.iter()
                .map(|k| match map.remove(*k) {
                    Some(Value::String(s)) => Ok(s),
                    Some(_) => Err(format!("\"{k}\" must be a string")),
                    None => Err(format!("missing \"{k}\"")),
                })
                .collect::<Result<Vec<_>, _>>()
        });
        match row {
            Ok(row) => rows.push(row),
            Err(message) => errors.push(LineError { line, message }),
        }
    }
    if !errors.is_empty() || rows.is_empty() {
        return Err(DatasetError::Format {
            path: path.to_path_buf(),
            errors,
        });
    }
    Ok(rows)
}

/// The `FOL` field of every entry, in file order.
pub fn load_formulas(path: &Path) -> Result<Vec<String>, DatasetError> {
    Ok(load_column(path, Format::from_path(path), &["FOL"])?
        .into_iter()
        .map(|mut row| row.remove(0))
        .collect())
}

/// `(FOL_PRED, FOL_GT)` pairs from a single file.
pub fn load_pairs(path: &Path) -> Result<Vec<(String, String)>, DatasetError> {
    Ok(
        load_column(path, Format::from_path(path), &["FOL_PRED", "FOL_GT"])?
            .into_iter()
            .map(|mut row| {
                let gold = row.pop().expect("two columns");
                let pred = row.pop().expect("two columns");
                (pred, gold)
            })
            .collect(),
    )
}

pub fn write_jsonl<T: Serialize>(out: &mut impl Write, items: &[T]) -> std::io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut *out, item)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub train_frac: f64,
    pub val_frac: f64,
    pub test_frac: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_frac: 0.72,
            val_frac: 0.08,
            test_frac: 0.20,
            seed: 0,
        }
    }
}

impl SplitSpec {
    pub fn new(
        train_frac: f64,
        val_frac: f64,
        test_frac: f64,
        seed: u64,
    ) -> Result<Self, DatasetError> {
        let spec = Self {
            train_frac,
            val_frac,
            test_frac,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        let fractions = [self.train_frac, self.val_frac, self.test_frac];
        if fractions
            .iter()
            .any(|f| !(0.0..1.0).contains(f) || f.is_nan())
        {
            return Err(DatasetError::InvalidSplit(format!(
                "fractions must lie in [0, 1), got {fractions:?}"
            )));
        }
        let sum: f64 = fractions.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(DatasetError::InvalidSplit(format!(
                "fractions sum to {sum}, not 1"
            )));
        }
        Ok(())
    }

    /// `(train, val, test)` sizes for `n` records: validation and test are
    /// floored, train takes the remainder.
    pub fn sizes(&self, n: usize) -> (usize, usize, usize) {
        let floor = |frac: f64| ((n as f64) * frac + 1e-9).floor() as usize;
        let val = floor(self.val_frac);
        let test = floor(self.test_frac).min(n - val);
        (n - val - test, val, test)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split<T> {
    pub train: Vec<T>,
    pub val: Vec<T>,
    pub test: Vec<T>,
}

/// Seeded uniform shuffle followed by contiguous train/val/test slices.
pub fn split<T>(mut records: Vec<T>, spec: &SplitSpec) -> Split<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    records.shuffle(&mut rng);
    let (train, val, _) = spec.sizes(records.len());
    let mut rest = records.split_off(train);
    let test = rest.split_off(val);
    Split {
        train: records,
        val: rest,
        test,
    }
}

/// Sorted, duplicate-free predicate names of a formula text.
pub fn predicate_names(fol: &str) -> Result<Vec<String>, ParseError> {
    let f = parse(fol)?;
    Ok(extract_signature(&f)
        .predicate_names()
        .into_iter()
        .collect())
}

fn gold_names(record: &DatasetRecord) -> Result<Vec<String>, DatasetError> {
    predicate_names(&record.fol).map_err(|error| DatasetError::Parse {
        id: record.id.clone(),
        error,
    })
}

pub fn attach_predicate_list(record: &DatasetRecord) -> Result<DatasetRecord, DatasetError> {
    let mut out = record.clone();
    out.predicates = Some(gold_names(record)?);
    Ok(out)
}

/// 64-bit FNV-1a, used to derive per-record seeds from record ids.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}

/// Seed for one record's generator: the corpus seed mixed with its id.
pub fn record_seed(seed: u64, id: &str) -> u64 {
    seed ^ fnv1a(id.as_bytes())
}

/// Noisy predicate lists over a fixed corpus. Each corpus formula is
/// parsed once; records whose formula does not parse never serve as
/// distractors.
pub struct NoisyListBuilder {
    pool: Vec<Vec<String>>,
    position: HashMap<String, usize>,
    distractors: usize,
}

impl NoisyListBuilder {
    pub fn new(corpus: &[DatasetRecord], distractors: usize) -> Self {
        let mut pool = Vec::new();
        let mut position = HashMap::new();
        for record in corpus {
            if let Ok(names) = predicate_names(&record.fol) {
                position.entry(record.id.clone()).or_insert(pool.len());
                pool.push(names);
            }
        }
        Self {
            pool,
            position,
            distractors,
        }
    }

    /// Gold names plus all names of `distractors` other records, sampled
    /// without replacement.
    pub fn build(&self, record: &DatasetRecord, seed: u64) -> Result<DatasetRecord, DatasetError> {
        let gold = gold_names(record)?;
        let own = self.position.get(&record.id).copied();
        let candidates = self.pool.len() - usize::from(own.is_some());
        if candidates < self.distractors {
            return Err(DatasetError::CorpusTooSmall {
                needed: self.distractors + 1,
                available: candidates + 1,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(record_seed(seed, &record.id));
        let mut names: BTreeSet<String> = gold.into_iter().collect();
        for i in rand::seq::index::sample(&mut rng, candidates, self.distractors) {
            // skip over the record's own slot
            let idx = match own {
                Some(o) if i >= o => i + 1,
                _ => i,
            };
            names.extend(self.pool[idx].iter().cloned());
        }
        let mut out = record.clone();
        out.predicates = Some(names.into_iter().collect());
        Ok(out)
    }
}

pub fn attach_noisy_predicate_list(
    record: &DatasetRecord,
    corpus: &[DatasetRecord],
    seed: u64,
) -> Result<DatasetRecord, DatasetError> {
    NoisyListBuilder::new(corpus, DEFAULT_DISTRACTORS).build(record, seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractionPair {
    pub input: String,
    pub target: String,
}

/// NL input paired with its comma-separated gold predicate list.
pub fn extraction_target(record: &DatasetRecord) -> Result<ExtractionPair, DatasetError> {
    Ok(ExtractionPair {
        input: record.nl.clone(),
        target: gold_names(record)?.join(", "),
    })
}

/// Inverse of the extraction target rendering.
pub fn parse_predicate_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PromptTemplate {
    Chat { system: String },
    Prefix { prefix: String, textual_ops: bool },
}

impl PromptTemplate {
    pub fn chat() -> Self {
        PromptTemplate::Chat {
            system: DEFAULT_SYSTEM_PROMPT.into(),
        }
    }

    pub fn prefix() -> Self {
        PromptTemplate::Prefix {
            prefix: DEFAULT_PREFIX.into(),
            textual_ops: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    fn new(role: &str, content: impl Into<String>) -> Self {
        Self {
            role: role.into(),
            content: content.into(),
        }
    }
}

/// A chat prompt serializes as a bare message array, a prefix prompt as
/// `{"input": …, "target": …}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Prompt {
    Chat(Vec<ChatMessage>),
    Prefix { input: String, target: String },
}

fn user_text(record: &DatasetRecord) -> String {
    match &record.predicates {
        Some(names) => format!("{}\nPredicates: {}", record.nl, names.join(", ")),
        None => record.nl.clone(),
    }
}

pub fn make_prompt(record: &DatasetRecord, template: &PromptTemplate) -> Prompt {
    match template {
        PromptTemplate::Chat { system } => {
            let fol = record.fol.trim();
            let answer = if fol.starts_with(FORMULA_MARKER) {
                fol.to_string()
            } else {
                format!("{FORMULA_MARKER}{fol}")
            };
            Prompt::Chat(vec![
                ChatMessage::new("system", system.clone()),
                ChatMessage::new("user", user_text(record)),
                ChatMessage::new("assistant", answer),
            ])
        }
        PromptTemplate::Prefix {
            prefix,
            textual_ops,
        } => {
            let target = match parse(&record.fol) {
                Ok(f) if *textual_ops => render(&f, LexemeStyle::Textual),
                _ => record.fol.clone(),
            };
            Prompt::Prefix {
                input: format!("{prefix}{}", user_text(record)),
                target,
            }
        }
    }
}
