//! Predicate alignment: maps predicted predicate names onto gold names by
//! normalized Levenshtein similarity, then rewrites the prediction.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::Signature;
use crate::syntax::Formula;

/// Minimum similarity for two predicate names to be aligned.
pub const DEFAULT_THRESHOLD: f64 = 0.6;

/// Unit-cost edit distance over Unicode scalar values.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diagonal = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let substitution = diagonal + usize::from(ca != cb);
            diagonal = row[j + 1];
            row[j + 1] = substitution.min(row[j] + 1).min(row[j + 1] + 1);
        }
    }
    row[b.len()]
}

/// `1 - lev(a, b) / max(|a|, |b|)`, compared case-insensitively; 1 for two
/// empty strings.
pub fn normalized_similarity(a: &str, b: &str) -> f64 {
    let a = a.to_lowercase();
    let b = b.to_lowercase();
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(&a, &b) as f64 / longest as f64
}

/// How leftover predicates are paired after exact matches are bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlignStrategy {
    /// Highest similarity first; ties go to the lexicographically smaller
    /// predicted, then gold, name.
    #[default]
    Greedy,
    /// Maximum total similarity over all admissible pairs.
    Optimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentEntry {
    pub from: String,
    pub to: String,
    pub arity: usize,
    pub similarity: f64,
}

/// Injective mapping from predicted to gold predicates of equal arity.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlignmentMap {
    pub entries: Vec<AlignmentEntry>,
}

impl AlignmentMap {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn target(&self, name: &str, arity: usize) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.from == name && e.arity == arity)
            .map(|e| e.to.as_str())
    }

    /// The same pairs pointing the other way.
    pub fn inverse(&self) -> AlignmentMap {
        AlignmentMap {
            entries: self
                .entries
                .iter()
                .map(|e| AlignmentEntry {
                    from: e.to.clone(),
                    to: e.from.clone(),
                    arity: e.arity,
                    similarity: e.similarity,
                })
                .collect(),
        }
    }

    /// Entries that actually rename something.
    pub fn renames(&self) -> impl Iterator<Item = &AlignmentEntry> {
        self.entries.iter().filter(|e| e.from != e.to)
    }
}

pub fn align_predicates(pred: &Signature, gold: &Signature, threshold: f64) -> AlignmentMap {
    align_predicates_with(pred, gold, threshold, AlignStrategy::Greedy)
}

pub fn align_predicates_with(
    pred: &Signature,
    gold: &Signature,
    threshold: f64,
    strategy: AlignStrategy,
) -> AlignmentMap {
    let mut entries = Vec::new();
    let mut pred_left: BTreeSet<&(String, usize)> = BTreeSet::new();
    for p in &pred.predicates {
        if gold.predicates.contains(p) {
            entries.push(AlignmentEntry {
                from: p.0.clone(),
                to: p.0.clone(),
                arity: p.1,
                similarity: 1.0,
            });
        } else {
            pred_left.insert(p);
        }
    }
    let gold_left: Vec<&(String, usize)> = gold
        .predicates
        .iter()
        .filter(|g| !pred.predicates.contains(*g))
        .collect();

    let mut candidates = Vec::new();
    for p in &pred_left {
        for g in &gold_left {
            if p.1 != g.1 {
                continue;
            }
            let similarity = normalized_similarity(&p.0, &g.0);
            if similarity >= threshold {
                candidates.push((*p, *g, similarity));
            }
        }
    }
    candidates.sort_by(|a, b| {
        b.2.partial_cmp(&a.2)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(b.0))
            .then_with(|| a.1.cmp(b.1))
    });

    let chosen = match strategy {
        AlignStrategy::Greedy => greedy(&candidates),
        AlignStrategy::Optimal => optimal(&candidates),
    };
    for (p, g, similarity) in chosen {
        entries.push(AlignmentEntry {
            from: p.0.clone(),
            to: g.0.clone(),
            arity: p.1,
            similarity,
        });
    }
    entries.sort_by(|a, b| (&a.from, a.arity).cmp(&(&b.from, b.arity)));
    AlignmentMap { entries }
}

type Candidate<'a> = (&'a (String, usize), &'a (String, usize), f64);

fn greedy<'a>(candidates: &[Candidate<'a>]) -> Vec<Candidate<'a>> {
    let mut used_pred = BTreeSet::new();
    let mut used_gold = BTreeSet::new();
    let mut chosen = Vec::new();
    for &(p, g, s) in candidates {
        if used_pred.contains(p) || used_gold.contains(g) {
            continue;
        }
        used_pred.insert(p);
        used_gold.insert(g);
        chosen.push((p, g, s));
    }
    chosen
}

/// Maximum-weight bipartite matching via the Hungarian method on the
/// candidate graph. Missing edges weigh zero and are dropped afterwards.
fn optimal<'a>(candidates: &[Candidate<'a>]) -> Vec<Candidate<'a>> {
    let preds: Vec<_> = candidates
        .iter()
        .map(|c| c.0)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let golds: Vec<_> = candidates
        .iter()
        .map(|c| c.1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if preds.is_empty() {
        return Vec::new();
    }
    let n = preds.len().max(golds.len());
    let mut weight = vec![vec![0.0f64; n]; n];
    for &(p, g, s) in candidates {
        let i = preds.binary_search(&p).expect("pred index");
        let j = golds.binary_search(&g).expect("gold index");
        weight[i][j] = s;
    }
    let assignment = hungarian_max(&weight);
    let mut chosen = Vec::new();
    for (i, &j) in assignment.iter().enumerate() {
        if i < preds.len() && j < golds.len() && weight[i][j] > 0.0 {
            chosen.push((preds[i], golds[j], weight[i][j]));
        }
    }
    chosen
}

/// Assignment maximizing the total weight of a square matrix; returns the
/// column for each row.
fn hungarian_max(weight: &[Vec<f64>]) -> Vec<usize> {
    let n = weight.len();
    // minimize cost = -weight; 1-indexed potentials as in the classic O(n^3) form
    let cost = |i: usize, j: usize| -weight[i - 1][j - 1];
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0; n];
    for j in 1..=n {
        if p[j] != 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    row_to_col
}

/// Renames every atom whose `name/arity` is a source in `map`.
pub fn apply_alignment(f: &Formula, map: &AlignmentMap) -> Formula {
    if map.renames().next().is_none() {
        return f.clone();
    }
    f.rename_predicates(&|name, arity| map.target(name, arity).map(str::to_string))
}
