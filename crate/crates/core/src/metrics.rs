//! Accuracy metrics for predicted formulas against gold formulas: exact
//! match and logical equivalence, each before and after predicate
//! alignment.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::align::{
    align_predicates_with, apply_alignment, AlignStrategy, AlignmentMap, DEFAULT_THRESHOLD,
};
use crate::analysis::extract_signature;
use crate::equiv::{check_equivalence, EquivConfig, EquivError, Verdict};
use crate::syntax::{canonical_form, parse, render, strip_whitespace, Formula, LexemeStyle};

/// Whitespace-insensitive match after both sides are canonicalized.
pub fn exact_match(pred: &str, gold: &str) -> bool {
    canonical_form(pred) == canonical_form(gold)
}

/// Whitespace-insensitive match on the texts as given.
pub fn exact_match_raw(pred: &str, gold: &str) -> bool {
    strip_whitespace(pred) == strip_whitespace(gold)
}

#[derive(Debug, Clone)]
pub struct ScoreOptions {
    pub threshold: f64,
    pub strategy: AlignStrategy,
    /// Also report exact match on the raw texts.
    pub strict_raw: bool,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            strategy: AlignStrategy::Greedy,
            strict_raw: false,
        }
    }
}

impl ScoreOptions {
    pub fn with_threshold(threshold: f64) -> Self {
        Self {
            threshold,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RecordScore {
    pub exact: bool,
    pub exact_pred: bool,
    pub equiv: bool,
    pub equiv_pred: bool,
    pub exact_raw: bool,
    pub pred_parse_ok: bool,
    pub gold_parse_ok: bool,
    /// Some equivalence check ended without a verdict.
    pub unknown: bool,
    pub notes: Vec<String>,
    pub alignment: AlignmentMap,
}

impl RecordScore {
    pub fn parses(&self) -> bool {
        self.pred_parse_ok && self.gold_parse_ok
    }
}

/// Outcome of one equivalence check as a boolean, plus a note when it
/// could not be decided.
fn decide(
    pred: &Formula,
    gold: &Formula,
    cfg: &EquivConfig,
    label: &str,
    score: &mut RecordScore,
) -> bool {
    if pred == gold {
        return true;
    }
    match check_equivalence(pred, gold, cfg) {
        Ok(Verdict::Equivalent) => true,
        Ok(Verdict::NotEquivalent { .. }) => false,
        Ok(Verdict::Unknown(reason)) => {
            score.unknown = true;
            score.notes.push(format!("{label}: unknown ({reason})"));
            false
        }
        Err(e) => {
            score.notes.push(format!("{label}: {e}"));
            false
        }
    }
}

pub fn score_record(
    pred_text: &str,
    gold_text: &str,
    cfg: &EquivConfig,
    threshold: f64,
) -> RecordScore {
    score_record_with(
        pred_text,
        gold_text,
        cfg,
        &ScoreOptions::with_threshold(threshold),
    )
}

/// Scores one prediction. Every failure is recorded in the score itself.
pub fn score_record_with(
    pred_text: &str,
    gold_text: &str,
    cfg: &EquivConfig,
    opts: &ScoreOptions,
) -> RecordScore {
    let mut score = RecordScore {
        exact_raw: exact_match_raw(pred_text, gold_text),
        ..RecordScore::default()
    };
    let gold = match parse(gold_text) {
        Ok(f) => f,
        Err(e) => {
            score.notes.push(format!("gold does not parse: {e}"));
            score.exact_raw = false;
            return score;
        }
    };
    score.gold_parse_ok = true;
    score.exact = exact_match(pred_text, gold_text);
    score.exact_pred = score.exact;

    let pred = match parse(pred_text) {
        Ok(f) => f,
        Err(e) => {
            score.notes.push(format!("prediction does not parse: {e}"));
            return score;
        }
    };
    score.pred_parse_ok = true;

    score.equiv = score.exact || decide(&pred, &gold, cfg, "equiv", &mut score);

    let alignment = align_predicates_with(
        &extract_signature(&pred),
        &extract_signature(&gold),
        opts.threshold,
        opts.strategy,
    );
    let normalized = apply_alignment(&pred, &alignment);
    let renamed = normalized != pred;
    score.exact_pred = score.exact
        || strip_whitespace(&render(&normalized, LexemeStyle::Symbolic))
            == strip_whitespace(&render(&gold, LexemeStyle::Symbolic));
    score.equiv_pred = score.equiv
        || score.exact_pred
        || (renamed && decide(&normalized, &gold, cfg, "equiv_pred", &mut score));
    score.alignment = alignment;
    score
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub n: usize,
    pub exact_pct: f64,
    pub exact_pred_pct: f64,
    pub equiv_pct: f64,
    pub equiv_pred_pct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_raw_pct: Option<f64>,
    pub unknown_count: usize,
    pub parse_failure_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("nothing to score")]
    EmptyCorpus,
    #[error("worker count must be positive")]
    NoWorkers,
    #[error(transparent)]
    Config(#[from] EquivError),
}

fn pct(count: usize, n: usize) -> f64 {
    100.0 * count as f64 / n as f64
}

impl ScoreReport {
    /// Aggregates per-record scores; `None` for an empty slice.
    pub fn from_scores(scores: &[RecordScore], strict_raw: bool) -> Option<Self> {
        let n = scores.len();
        if n == 0 {
            return None;
        }
        let count = |pick: fn(&RecordScore) -> bool| scores.iter().filter(|s| pick(s)).count();
        Some(Self {
            n,
            exact_pct: pct(count(|s| s.exact), n),
            exact_pred_pct: pct(count(|s| s.exact_pred), n),
            equiv_pct: pct(count(|s| s.equiv), n),
            equiv_pred_pct: pct(count(|s| s.equiv_pred), n),
            exact_raw_pct: strict_raw.then(|| pct(count(|s| s.exact_raw), n)),
            unknown_count: count(|s| s.unknown),
            parse_failure_count: count(|s| !s.parses()),
        })
    }

    /// Plain-text table with one header row and one value row.
    pub fn to_table(&self) -> String {
        let mut headers = vec!["N", "Exact", "Exact (Pred.)", "Equiv.", "Equiv. (Pred.)"];
        let mut values = vec![
            self.n.to_string(),
            format!("{:.2}", self.exact_pct),
            format!("{:.2}", self.exact_pred_pct),
            format!("{:.2}", self.equiv_pct),
            format!("{:.2}", self.equiv_pred_pct),
        ];
        if let Some(raw) = self.exact_raw_pct {
            headers.push("Exact (raw)");
            values.push(format!("{raw:.2}"));
        }
        headers.extend(["Unknown", "Parse failures"]);
        values.push(self.unknown_count.to_string());
        values.push(self.parse_failure_count.to_string());

        let widths: Vec<usize> = headers
            .iter()
            .zip(&values)
            .map(|(h, v)| h.chars().count().max(v.len()))
            .collect();
        let mut out = String::new();
        for row in [
            headers.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            values,
        ] {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", cells.join("  "));
        }
        out
    }
}

/// Scores every pair on a pool of `workers` threads. Results keep input
/// order, so the report does not depend on scheduling.
pub fn score_pairs(
    pairs: &[(String, String)],
    cfg: &EquivConfig,
    opts: &ScoreOptions,
    workers: usize,
) -> Result<Vec<RecordScore>, MetricsError> {
    if pairs.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    if workers == 0 {
        return Err(MetricsError::NoWorkers);
    }
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    Ok(pool.install(|| {
        pairs
            .par_iter()
            .map(|(pred, gold)| score_record_with(pred, gold, cfg, opts))
            .collect()
    }))
}

pub fn score_corpus(
    pairs: &[(String, String)],
    cfg: &EquivConfig,
    threshold: f64,
    workers: usize,
) -> Result<ScoreReport, MetricsError> {
    let opts = ScoreOptions::with_threshold(threshold);
    let scores = score_pairs(pairs, cfg, &opts, workers)?;
    Ok(ScoreReport::from_scores(&scores, opts.strict_raw).expect("non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::Engine;

    const PINEAPPLE_PRED: &str = "∀x (Pineapple(x) → (Fruit(x) ∧ HasSpikySkin(x)))";
    const PINEAPPLE_GOLD: &str = "∀x (Pineapple(x) → (Fruit(x) ∧ SpikySkin(x)))";

    fn enum_cfg() -> EquivConfig {
        EquivConfig {
            engine: Engine::Enumerate,
            max_domain: 2,
            ..EquivConfig::default()
        }
    }

    #[test]
    fn exact_match_examples() {
        assert!(exact_match("∀x(P(x))", "∀x ( P(x) )"));
        assert!(exact_match("forall x (P(x))", "∀x (P(x))"));
        assert!(exact_match("Φ= P(a)", "P(a)"));
        assert!(!exact_match_raw("Φ= P(a)", "P(a)"));
        assert!(exact_match_raw("P( a )", "P(a)"));
    }

    #[test]
    fn identical_record_scores_all_true() {
        let s = score_record("P(a)", "P(a)", &enum_cfg(), 0.6);
        assert!(s.exact && s.exact_pred && s.equiv && s.equiv_pred);
        assert!(!s.unknown);
    }

    #[test]
    fn pineapple_is_exact_after_alignment() {
        let s = score_record(PINEAPPLE_PRED, PINEAPPLE_GOLD, &enum_cfg(), 0.6);
        assert!(!s.exact);
        assert!(s.exact_pred);
        assert!(!s.equiv);
        assert!(s.equiv_pred);
        assert_eq!(s.alignment.target("HasSpikySkin", 1), Some("SpikySkin"));
    }

    #[test]
    fn parse_failures_are_captured() {
        let s = score_record("P(a", "P(a)", &enum_cfg(), 0.6);
        assert!(!s.pred_parse_ok && s.gold_parse_ok);
        assert!(!s.exact && !s.equiv && !s.exact_pred && !s.equiv_pred);
        assert_eq!(s.notes.len(), 1);
        let s = score_record("P(a)", ")", &enum_cfg(), 0.6);
        assert!(!s.gold_parse_ok);
        assert!(!s.exact_raw && !s.exact_pred);
    }

    #[test]
    fn enumeration_counts_undecided_as_unknown() {
        let s = score_record("¬∀x P(x)", "∃x ¬P(x)", &enum_cfg(), 0.6);
        assert!(!s.equiv && !s.equiv_pred);
        assert!(s.unknown);
        assert!(s.notes[0].contains("unknown"));
    }

    #[test]
    fn report_percentages() {
        let pairs: Vec<(String, String)> = vec![
            ("P(a)".into(), "P(a)".into()),
            (PINEAPPLE_PRED.into(), PINEAPPLE_GOLD.into()),
            ("Q(b)".into(), "Q(b)".into()),
            ("P(a)".into(), "P(b)".into()),
        ];
        let report = score_corpus(&pairs, &enum_cfg(), 0.6, 2).unwrap();
        assert_eq!(report.n, 4);
        assert_eq!(report.exact_pct, 50.0);
        assert_eq!(report.exact_pred_pct, 75.0);
        assert_eq!(report.equiv_pct, 50.0);
        assert_eq!(report.equiv_pred_pct, 75.0);

        let doubled: Vec<_> = pairs.iter().chain(&pairs).cloned().collect();
        let again = score_corpus(&doubled, &enum_cfg(), 0.6, 3).unwrap();
        assert_eq!(again.exact_pct, report.exact_pct);
        assert_eq!(again.equiv_pred_pct, report.equiv_pred_pct);
        assert_eq!(
            score_corpus(&[], &enum_cfg(), 0.6, 1),
            Err(MetricsError::EmptyCorpus)
        );
        assert_eq!(
            score_corpus(&pairs, &enum_cfg(), 0.6, 0),
            Err(MetricsError::NoWorkers)
        );
    }

    #[test]
    fn table_layout() {
        let scores = vec![RecordScore {
            exact: true,
            exact_pred: true,
            equiv: true,
            equiv_pred: true,
            pred_parse_ok: true,
            gold_parse_ok: true,
            ..RecordScore::default()
        }];
        let table = ScoreReport::from_scores(&scores, false).unwrap().to_table();
        let lines: Vec<_> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("Exact  Exact (Pred.)  Equiv.  Equiv. (Pred.)"));
        assert!(lines[1].contains("100.00"));
    }
}
