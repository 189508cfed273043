//! Exhaustive search for models over small finite domains.
//!
//! An interpretation over the domain `{0, .., d-1}` is a truth table for
//! every predicate plus a domain element for every constant. Truth tables
//! are packed into one bit mask: predicate `P/k` owns `d^k` consecutive bits,
//! and the tuple `(e1, .., ek)` selects bit `e1*d^(k-1) + .. + ek`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{prepare, EquivError, FreeVarPolicy};
use crate::analysis::{extract_signature, Signature};
use crate::syntax::{BinaryOp, Formula, Term};

/// Default cap on `2^(Σ d^arity) · d^|constants|` per domain size.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// A finite interpretation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Model {
    pub domain_size: usize,
    /// Tuples on which each predicate `name/arity` holds.
    pub predicates: BTreeMap<String, Vec<Vec<usize>>>,
    pub constants: BTreeMap<String, usize>,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "domain {{0..{}}}", self.domain_size.saturating_sub(1))?;
        for (name, tuples) in &self.predicates {
            let rendered: Vec<String> = tuples
                .iter()
                .map(|t| {
                    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            write!(f, "; {name} = {{{}}}", rendered.join(", "))?;
        }
        for (name, value) in &self.constants {
            write!(f, "; {name} = {value}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
enum Arg {
    Const(usize),
    Slot(usize),
}

#[derive(Debug)]
enum Node {
    Atom { predicate: usize, args: Vec<Arg> },
    Not(Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A closed formula compiled against a fixed signature.
struct Compiled {
    root: Node,
    predicates: Vec<(String, usize)>,
    constants: Vec<String>,
    slots: usize,
}

impl Compiled {
    fn new(f: &Formula, signature: &Signature) -> Self {
        let predicates: Vec<_> = signature.predicates.iter().cloned().collect();
        let constants: Vec<_> = signature.constants.iter().cloned().collect();
        let pred_index: HashMap<&(String, usize), usize> =
            predicates.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let const_index: HashMap<&String, usize> =
            constants.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut slots = 0;
        let mut scope: Vec<(String, usize)> = Vec::new();
        let root = compile(f, &pred_index, &const_index, &mut scope, &mut slots);
        Self {
            root,
            predicates,
            constants,
            slots,
        }
    }
}

fn compile(
    f: &Formula,
    preds: &HashMap<&(String, usize), usize>,
    consts: &HashMap<&String, usize>,
    scope: &mut Vec<(String, usize)>,
    slots: &mut usize,
) -> Node {
    match f {
        Formula::Atom { predicate, args } => {
            let key = (predicate.clone(), args.len());
            let args = args
                .iter()
                .map(|t| match t {
                    Term::Variable(v) => Arg::Slot(
                        scope
                            .iter()
                            .rev()
                            .find(|(name, _)| name == v)
                            .map(|&(_, slot)| slot)
                            .expect("formula is closed"),
                    ),
                    Term::Constant(c) => Arg::Const(consts[c]),
                })
                .collect();
            Node::Atom {
                predicate: preds[&key],
                args,
            }
        }
        Formula::Not(inner) => Node::Not(Box::new(compile(inner, preds, consts, scope, slots))),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let slot = *slots;
            *slots += 1;
            scope.push((v.clone(), slot));
            let body = Box::new(compile(body, preds, consts, scope, slots));
            scope.pop();
            if matches!(f, Formula::Forall(..)) {
                Node::Forall(slot, body)
            } else {
                Node::Exists(slot, body)
            }
        }
        _ => {
            let (op, a, b) = f.as_binary().expect("binary");
            Node::Binary(
                op,
                Box::new(compile(a, preds, consts, scope, slots)),
                Box::new(compile(b, preds, consts, scope, slots)),
            )
        }
    }
}

struct Interpretation<'a> {
    domain: usize,
    /// First bit of each predicate's truth table.
    offsets: &'a [usize],
    tables: u64,
    constants: &'a [usize],
}

fn eval(node: &Node, interp: &Interpretation<'_>, env: &mut [usize]) -> bool {
    match node {
        Node::Atom { predicate, args } => {
            let mut index = 0;
            for a in args {
                let value = match *a {
                    Arg::Const(c) => interp.constants[c],
                    Arg::Slot(s) => env[s],
                };
                index = index * interp.domain + value;
            }
            interp.tables >> (interp.offsets[*predicate] + index) & 1 == 1
        }
        Node::Not(inner) => !eval(inner, interp, env),
        Node::Binary(op, a, b) => {
            let lhs = eval(a, interp, env);
            match op {
                BinaryOp::And => lhs && eval(b, interp, env),
                BinaryOp::Or => lhs || eval(b, interp, env),
                BinaryOp::Implies => !lhs || eval(b, interp, env),
                BinaryOp::Iff => lhs == eval(b, interp, env),
                BinaryOp::Xor => lhs != eval(b, interp, env),
            }
        }
        Node::Forall(slot, body) => (0..interp.domain).all(|e| {
            env[*slot] = e;
            eval(body, interp, env)
        }),
        Node::Exists(slot, body) => (0..interp.domain).any(|e| {
            env[*slot] = e;
            eval(body, interp, env)
        }),
    }
}

/// Number of interpretations of `signature` over a domain of size `d`,
/// saturating at `u128::MAX`.
pub fn interpretation_count(signature: &Signature, domain: usize) -> u128 {
    let bits: u128 = signature
        .predicates
        .iter()
        .map(|(_, arity)| (domain as u128).saturating_pow(*arity as u32))
        .fold(0u128, u128::saturating_add);
    let tables = if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    };
    tables.saturating_mul((domain as u128).saturating_pow(signature.constants.len() as u32))
}

fn check_budget(signature: &Signature, domain: usize, budget: u64) -> Result<(), EquivError> {
    let count = interpretation_count(signature, domain);
    let bits: usize = signature
        .predicates
        .iter()
        .map(|(_, a)| domain.saturating_pow(*a as u32))
        .sum();
    if count > budget as u128 || bits >= 64 {
        return Err(EquivError::BudgetExceeded {
            domain_size: domain,
            interpretations: count,
            budget,
        });
    }
    Ok(())
}

/// Visits every interpretation over a domain of size `domain` that satisfies
/// the compiled formula, until `visit` breaks.
fn search_domain(
    compiled: &Compiled,
    domain: usize,
    visit: &mut impl FnMut(&Interpretation<'_>) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut offsets = Vec::with_capacity(compiled.predicates.len());
    let mut bits = 0usize;
    for (_, arity) in &compiled.predicates {
        offsets.push(bits);
        bits += domain.pow(*arity as u32);
    }
    let mut constants = vec![0usize; compiled.constants.len()];
    let mut env = vec![0usize; compiled.slots];
    loop {
        for tables in 0..(1u64 << bits) {
            let interp = Interpretation {
                domain,
                offsets: &offsets,
                tables,
                constants: &constants,
            };
            if eval(&compiled.root, &interp, &mut env) {
                visit(&interp)?;
            }
        }
        // odometer over constant assignments
        let mut i = 0;
        loop {
            if i == constants.len() {
                return ControlFlow::Continue(());
            }
            constants[i] += 1;
            if constants[i] < domain {
                break;
            }
            constants[i] = 0;
            i += 1;
        }
    }
}

fn describe(compiled: &Compiled, interp: &Interpretation<'_>) -> Model {
    let d = interp.domain;
    let mut predicates = BTreeMap::new();
    for (p, (name, arity)) in compiled.predicates.iter().enumerate() {
        let size = d.pow(*arity as u32);
        let mut tuples = Vec::new();
        for index in 0..size {
            if interp.tables >> (interp.offsets[p] + index) & 1 == 1 {
                let mut tuple = vec![0; *arity];
                let mut rest = index;
                for slot in tuple.iter_mut().rev() {
                    *slot = rest % d;
                    rest /= d;
                }
                tuples.push(tuple);
            }
        }
        predicates.insert(format!("{name}/{arity}"), tuples);
    }
    let constants = compiled
        .constants
        .iter()
        .cloned()
        .zip(interp.constants.iter().copied())
        .collect();
    Model {
        domain_size: d,
        predicates,
        constants,
    }
}

/// Outcome of looking for one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Search {
    Found(Model),
    /// Every domain size up to the limit was searched without success.
    Exhausted,
    /// The search stopped early at this domain size because of the budget.
    OverBudget(usize),
}

/// Looks for a model of the closed formula `f` over domain sizes
/// `1..=max_domain`, smallest first.
pub(crate) fn find_model(f: &Formula, max_domain: usize, budget: u64) -> Search {
    let signature = extract_signature(f);
    let compiled = Compiled::new(f, &signature);
    for d in 1..=max_domain {
        if check_budget(&signature, d, budget).is_err() {
            return Search::OverBudget(d);
        }
        let mut found = None;
        let _ = search_domain(&compiled, d, &mut |interp| {
            found = Some(describe(&compiled, interp));
            ControlFlow::Break(())
        });
        if let Some(model) = found {
            return Search::Found(model);
        }
    }
    Search::Exhausted
}

/// Every model of `f` over domain sizes `1..=max_domain`, ordered by domain
/// size. Free variables are universally closed.
pub fn enumerate_models(f: &Formula, max_domain: usize) -> Result<Vec<Model>, EquivError> {
    enumerate_models_with_budget(f, max_domain, DEFAULT_BUDGET)
}

pub fn enumerate_models_with_budget(
    f: &Formula,
    max_domain: usize,
    budget: u64,
) -> Result<Vec<Model>, EquivError> {
    if max_domain == 0 {
        return Err(EquivError::InvalidConfig(
            "max_domain must be at least 1".into(),
        ));
    }
    let f = prepare(f, FreeVarPolicy::UniversalClosure)?;
    let signature = extract_signature(&f);
    for d in 1..=max_domain {
        check_budget(&signature, d, budget)?;
    }
    let compiled = Compiled::new(&f, &signature);
    let mut models = Vec::new();
    for d in 1..=max_domain {
        let _ = search_domain(&compiled, d, &mut |interp| {
            models.push(describe(&compiled, interp));
            ControlFlow::Continue(())
        });
    }
    Ok(models)
}
