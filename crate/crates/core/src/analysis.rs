//! Structural statistics over formulas and corpora.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::DatasetRecord;
use crate::syntax::{parse, Formula, Term};

/// Predicates (by name and arity) and constants occurring in some formulas.
/// A name used with two arities yields two distinct predicate entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub predicates: BTreeSet<(String, usize)>,
    pub constants: BTreeSet<String>,
}

impl Signature {
    pub fn of(f: &Formula) -> Self {
        extract_signature(f)
    }

    pub fn union(mut self, other: &Signature) -> Self {
        self.extend(other);
        self
    }

    pub fn extend(&mut self, other: &Signature) {
        self.predicates.extend(other.predicates.iter().cloned());
        self.constants.extend(other.constants.iter().cloned());
    }

    /// Predicate names without arity, sorted and deduplicated.
    pub fn predicate_names(&self) -> BTreeSet<String> {
        self.predicates.iter().map(|(n, _)| n.clone()).collect()
    }
}

pub fn extract_signature(f: &Formula) -> Signature {
    let mut sig = Signature::default();
    f.for_each_atom(&mut |name, args| {
        sig.predicates.insert((name.to_string(), args.len()));
        for t in args {
            if let Term::Constant(c) = t {
                sig.constants.insert(c.clone());
            }
        }
    });
    sig
}

pub fn count_quantifiers(f: &Formula) -> usize {
    let own = usize::from(f.as_quantifier().is_some());
    own + f
        .children()
        .into_iter()
        .map(count_quantifiers)
        .sum::<usize>()
}

/// Counts `∧`, `∨`, `¬` and `→` nodes. `↔` and `⊕` are not counted.
pub fn count_connectives(f: &Formula) -> usize {
    let own = usize::from(matches!(
        f,
        Formula::And(..) | Formula::Or(..) | Formula::Not(_) | Formula::Implies(..)
    ));
    own + f
        .children()
        .into_iter()
        .map(count_connectives)
        .sum::<usize>()
}

/// Tree depth with atoms at depth 1.
pub fn formula_depth(f: &Formula) -> usize {
    1 + f
        .children()
        .into_iter()
        .map(formula_depth)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub total: usize,
    pub unique_predicates: usize,
    pub unique_constants: usize,
    pub avg_nl_chars: f64,
    pub avg_fol_chars: f64,
    pub avg_quantifiers: f64,
    pub avg_depth: f64,
    pub avg_connectives: f64,
}

/// A stats run: the report plus the ids of records whose formula did not
/// parse. Those records count towards `total` and the string-length averages
/// but not towards the formula-derived figures.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsOutcome {
    pub report: StatsReport,
    pub unparseable: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StatsError {
    #[error("dataset is empty")]
    EmptyDataset,
}

pub fn dataset_stats(records: &[DatasetRecord]) -> Result<StatsOutcome, StatsError> {
    if records.is_empty() {
        return Err(StatsError::EmptyDataset);
    }
    let mut signature = Signature::default();
    let mut unparseable = Vec::new();
    let (mut nl_chars, mut fol_chars) = (0usize, 0usize);
    let (mut quantifiers, mut depth, mut connectives, mut parsed) =
        (0usize, 0usize, 0usize, 0usize);
    for record in records {
        nl_chars += record.nl.chars().count();
        fol_chars += record.fol.chars().count();
        match parse(&record.fol) {
            Ok(f) => {
                parsed += 1;
                signature.extend(&extract_signature(&f));
                quantifiers += count_quantifiers(&f);
                depth += formula_depth(&f);
                connectives += count_connectives(&f);
            }
            Err(_) => unparseable.push(record.id.clone()),
        }
    }
    let mean = |sum: usize, n: usize| if n == 0 { 0.0 } else { sum as f64 / n as f64 };
    let total = records.len();
    Ok(StatsOutcome {
        report: StatsReport {
            total,
            unique_predicates: signature.predicates.len(),
            unique_constants: signature.constants.len(),
            avg_nl_chars: mean(nl_chars, total),
            avg_fol_chars: mean(fol_chars, total),
            avg_quantifiers: mean(quantifiers, parsed),
            avg_depth: mean(depth, parsed),
            avg_connectives: mean(connectives, parsed),
        },
        unparseable,
    })
}
