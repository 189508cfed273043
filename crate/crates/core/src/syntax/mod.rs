//! First-order formulas: the AST, a lexer/parser accepting symbolic and
//! textual operator spellings, a renderer, and the canonical comparison key
//! used by exact match.
//!
//! The grammar, tightest binding first:
//!
//! ```text
//! ¬  ∧  ∨  ⊕  →  ↔
//! ```
//!
//! `∧`, `∨` and `⊕` associate to the left, `→` and `↔` to the right, and a
//! quantifier's scope extends as far to the right as possible.

mod generate;
mod lexer;
mod parser;
mod render;

use std::collections::BTreeSet;
use std::fmt;

pub use generate::FormulaGenerator;
pub use lexer::{Token, TokenKind};
pub use parser::{parse, ParseError, MAX_NESTING};
pub use render::{canonical_form, render, strip_whitespace};

/// Argument of an atom. Whether a name is a variable or a constant is
/// decided by scope: it is a variable iff an enclosing quantifier binds it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Variable(String),
    Constant(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Constant(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Variable(n) | Term::Constant(n) => n,
        }
    }
}

/// An immutable first-order formula over predicates and terms. There are no
/// function symbols and no equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { predicate: String, args: Vec<Term> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// The five binary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    And,
    Or,
    Xor,
    Implies,
    Iff,
}

impl BinaryOp {
    /// Binding strength; larger binds tighter.
    pub(crate) fn precedence(self) -> u8 {
        match self {
            BinaryOp::Iff => 1,
            BinaryOp::Implies => 2,
            BinaryOp::Xor => 3,
            BinaryOp::Or => 4,
            BinaryOp::And => 5,
        }
    }

    pub(crate) fn is_right_assoc(self) -> bool {
        matches!(self, BinaryOp::Implies | BinaryOp::Iff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// Operator spelling used when rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LexemeStyle {
    /// `∀ ∃ ¬ ∧ ∨ → ↔ ⊕`
    #[default]
    Symbolic,
    /// `forall exists not and or implies iff xor`
    Textual,
}

impl Formula {
    pub fn atom(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom {
            predicate: predicate.into(),
            args,
        }
    }

    /// Arity-0 atom.
    pub fn prop(predicate: impl Into<String>) -> Self {
        Formula::atom(predicate, Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Formula, b: Formula) -> Self {
        Formula::Xor(Box::new(a), Box::new(b))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn binary(op: BinaryOp, a: Formula, b: Formula) -> Self {
        match op {
            BinaryOp::And => Formula::and(a, b),
            BinaryOp::Or => Formula::or(a, b),
            BinaryOp::Xor => Formula::xor(a, b),
            BinaryOp::Implies => Formula::implies(a, b),
            BinaryOp::Iff => Formula::iff(a, b),
        }
    }

    pub fn quantified(q: Quantifier, var: impl Into<String>, body: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(var, body),
            Quantifier::Exists => Formula::exists(var, body),
        }
    }

    /// Conjunction of all `formulas`, folded to the left. `None` when empty.
    pub fn conjunction(formulas: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        formulas.into_iter().reduce(Formula::and)
    }

    pub fn as_binary(&self) -> Option<(BinaryOp, &Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((BinaryOp::And, a, b)),
            Formula::Or(a, b) => Some((BinaryOp::Or, a, b)),
            Formula::Xor(a, b) => Some((BinaryOp::Xor, a, b)),
            Formula::Implies(a, b) => Some((BinaryOp::Implies, a, b)),
            Formula::Iff(a, b) => Some((BinaryOp::Iff, a, b)),
            _ => None,
        }
    }

    pub fn as_quantifier(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(v, body) => Some((Quantifier::Forall, v, body)),
            Formula::Exists(v, body) => Some((Quantifier::Exists, v, body)),
            _ => None,
        }
    }

    /// Direct subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom { .. } => Vec::new(),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => vec![f],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Xor(a, b) => vec![a, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::node_count)
            .sum::<usize>()
    }

    /// Calls `visit` on every atom in left-to-right order.
    pub fn for_each_atom<'a>(&'a self, visit: &mut impl FnMut(&'a str, &'a [Term])) {
        match self {
            Formula::Atom { predicate, args } => visit(predicate, args),
            _ => {
                for child in self.children() {
                    child.for_each_atom(visit);
                }
            }
        }
    }

    /// Rebuilds the formula with every atom's predicate name passed through
    /// `rename`, which receives the name and arity.
    pub fn rename_predicates(&self, rename: &impl Fn(&str, usize) -> Option<String>) -> Formula {
        match self {
            Formula::Atom { predicate, args } => Formula::Atom {
                predicate: rename(predicate, args.len()).unwrap_or_else(|| predicate.clone()),
                args: args.clone(),
            },
            Formula::Not(f) => Formula::not(f.rename_predicates(rename)),
            Formula::Forall(v, f) => Formula::forall(v.clone(), f.rename_predicates(rename)),
            Formula::Exists(v, f) => Formula::exists(v.clone(), f.rename_predicates(rename)),
            _ => {
                let (op, a, b) = self.as_binary().expect("binary node");
                Formula::binary(op, a.rename_predicates(rename), b.rename_predicates(rename))
            }
        }
    }

    /// Variable terms not bound by an enclosing quantifier. The parser never
    /// produces these (unbound names become constants) but formulas built by
    /// hand can contain them.
    pub fn free_variables(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom { args, .. } => {
                    for t in args {
                        if let Term::Variable(v) = t {
                            if !bound.iter().any(|b| b == v) {
                                out.insert(v.clone());
                            }
                        }
                    }
                }
                Formula::Forall(v, body) | Formula::Exists(v, body) => {
                    bound.push(v.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
                _ => {
                    for child in f.children() {
                        walk(child, bound, out);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Wraps the formula in universal quantifiers over its free variables,
    /// outermost first in sorted order.
    pub fn universal_closure(self) -> Formula {
        let free = self.free_variables();
        free.into_iter()
            .rev()
            .fold(self, |body, v| Formula::forall(v, body))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, LexemeStyle::Symbolic))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `true` for names matching `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
