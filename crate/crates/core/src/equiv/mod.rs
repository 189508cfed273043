//! Logical equivalence and entailment.
//!
//! Two formulas are equivalent iff `¬(φ ↔ ψ)` is unsatisfiable; premises
//! entail a conclusion iff `premises ∧ ¬conclusion` is unsatisfiable. The
//! decisive engine is an external SMT-LIB2 solver. Finite model enumeration
//! can refute (it finds counter-models) but never proves anything.

mod enumerate;
mod smt;
mod solver;

use std::fmt;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::Formula;

pub use enumerate::{
    enumerate_models, enumerate_models_with_budget, interpretation_count, Model, DEFAULT_BUDGET,
};
pub use smt::{predicate_symbol, to_smt_script, CheckMode, UNIVERSE};
pub use solver::{SolverAnswer, SolverCommand, SOLVER_ENV};

use enumerate::{find_model, Search};
use smt::script_for_assertions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Solver,
    Enumerate,
    /// Enumeration first for quick refutation, then the solver.
    Hybrid,
}

/// What to do with variables that no quantifier binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FreeVarPolicy {
    #[default]
    UniversalClosure,
    Reject,
}

#[derive(Debug, Clone)]
pub struct EquivConfig {
    pub timeout: Duration,
    pub engine: Engine,
    /// Largest domain tried by enumeration.
    pub max_domain: usize,
    pub free_var_policy: FreeVarPolicy,
    pub solver: SolverCommand,
    /// Interpretation budget per domain size for enumeration.
    pub budget: u64,
}

impl Default for EquivConfig {
    fn default() -> Self {
        Self {
            timeout: Duration::from_secs(10),
            engine: Engine::Solver,
            max_domain: 3,
            free_var_policy: FreeVarPolicy::UniversalClosure,
            solver: SolverCommand::from_env(),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl EquivConfig {
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn validate(&self) -> Result<(), EquivError> {
        if self.timeout.is_zero() {
            return Err(EquivError::InvalidConfig("timeout must be positive".into()));
        }
        if self.max_domain == 0 {
            return Err(EquivError::InvalidConfig(
                "max_domain must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("formula has free variables: {}", variables.join(", "))]
    FreeVariables { variables: Vec<String> },
    #[error("{interpretations} interpretations over a domain of size {domain_size} exceed the budget of {budget}")]
    BudgetExceeded {
        domain_size: usize,
        interpretations: u128,
        budget: u64,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum UnknownReason {
    Timeout,
    SolverUnavailable,
    /// Enumeration found nothing; it cannot prove validity.
    EnumerationExhausted,
    /// The solver printed an error or no answer.
    SolverError(String),
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownReason::Timeout => f.write_str("timeout"),
            UnknownReason::SolverUnavailable => f.write_str("solver unavailable"),
            UnknownReason::EnumerationExhausted => f.write_str("enumeration exhausted"),
            UnknownReason::SolverError(msg) => write!(f, "solver error: {msg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    NotEquivalent { witness: Option<Model> },
    Unknown(UnknownReason),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equivalent => f.write_str("Equivalent"),
            Verdict::NotEquivalent { witness: None } => f.write_str("NotEquivalent"),
            Verdict::NotEquivalent { witness: Some(m) } => write!(f, "NotEquivalent ({m})"),
            Verdict::Unknown(r) => write!(f, "Unknown ({r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EntailmentVerdict {
    Entailed,
    Contradicted,
    Neutral,
    Unknown(UnknownReason),
}

impl fmt::Display for EntailmentVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntailmentVerdict::Entailed => f.write_str("Entailed"),
            EntailmentVerdict::Contradicted => f.write_str("Contradicted"),
            EntailmentVerdict::Neutral => f.write_str("Neutral"),
            EntailmentVerdict::Unknown(r) => write!(f, "Unknown ({r})"),
        }
    }
}

/// Applies the free-variable policy, returning a closed formula.
pub(crate) fn prepare(f: &Formula, policy: FreeVarPolicy) -> Result<Formula, EquivError> {
    let free = f.free_variables();
    if free.is_empty() {
        return Ok(f.clone());
    }
    match policy {
        FreeVarPolicy::UniversalClosure => Ok(f.clone().universal_closure()),
        FreeVarPolicy::Reject => Err(EquivError::FreeVariables {
            variables: free.into_iter().collect(),
        }),
    }
}

/// Satisfiability of a conjunction of closed formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Sat {
    Model(Option<Model>),
    Unsat,
    Unknown(UnknownReason),
}

fn solver_sat(assertions: &[Formula], cfg: &EquivConfig) -> Sat {
    let script = script_for_assertions(assertions);
    match cfg.solver.run(&script, cfg.timeout) {
        SolverAnswer::Sat => Sat::Model(None),
        SolverAnswer::Unsat => Sat::Unsat,
        SolverAnswer::Unknown | SolverAnswer::Timeout => Sat::Unknown(UnknownReason::Timeout),
        SolverAnswer::Unavailable(_) => Sat::Unknown(UnknownReason::SolverUnavailable),
        SolverAnswer::Error(msg) => Sat::Unknown(UnknownReason::SolverError(msg)),
    }
}

fn enumerate_sat(assertions: &[Formula], cfg: &EquivConfig) -> Option<Model> {
    let conjunction = Formula::conjunction(assertions.iter().cloned())?;
    match find_model(&conjunction, cfg.max_domain, cfg.budget) {
        Search::Found(model) => Some(model),
        Search::Exhausted | Search::OverBudget(_) => None,
    }
}

fn decide_sat(assertions: &[Formula], cfg: &EquivConfig) -> Sat {
    match cfg.engine {
        Engine::Solver => solver_sat(assertions, cfg),
        Engine::Enumerate => match enumerate_sat(assertions, cfg) {
            Some(model) => Sat::Model(Some(model)),
            None => Sat::Unknown(UnknownReason::EnumerationExhausted),
        },
        Engine::Hybrid => match enumerate_sat(assertions, cfg) {
            Some(model) => Sat::Model(Some(model)),
            None => solver_sat(assertions, cfg),
        },
    }
}

/// Decides whether `phi` and `psi` are logically equivalent.
///
/// Solver failures are reported as [`Verdict::Unknown`], never as errors.
/// The only errors are an invalid configuration and free variables under
/// [`FreeVarPolicy::Reject`].
pub fn check_equivalence(
    phi: &Formula,
    psi: &Formula,
    cfg: &EquivConfig,
) -> Result<Verdict, EquivError> {
    cfg.validate()?;
    let phi = prepare(phi, cfg.free_var_policy)?;
    let psi = prepare(psi, cfg.free_var_policy)?;
    let negated = Formula::not(Formula::iff(phi, psi));
    Ok(match decide_sat(&[negated], cfg) {
        Sat::Model(witness) => Verdict::NotEquivalent { witness },
        Sat::Unsat => Verdict::Equivalent,
        Sat::Unknown(reason) => Verdict::Unknown(reason),
    })
}

/// Classifies `conclusion` against `premises` with two satisfiability
/// checks. Inconsistent premises entail everything and yield `Entailed`.
pub fn check_entailment(
    premises: &[Formula],
    conclusion: &Formula,
    cfg: &EquivConfig,
) -> Result<EntailmentVerdict, EquivError> {
    cfg.validate()?;
    let premises = premises
        .iter()
        .map(|p| prepare(p, cfg.free_var_policy))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = prepare(conclusion, cfg.free_var_policy)?;

    let mut counter = premises.clone();
    counter.push(Formula::not(conclusion.clone()));
    let mut support = premises;
    support.push(conclusion);

    let against = decide_sat(&counter, cfg);
    let towards = decide_sat(&support, cfg);
    Ok(match (against, towards) {
        (Sat::Unknown(reason), _) | (_, Sat::Unknown(reason)) => EntailmentVerdict::Unknown(reason),
        (Sat::Unsat, _) => EntailmentVerdict::Entailed,
        (_, Sat::Unsat) => EntailmentVerdict::Contradicted,
        (Sat::Model(_), Sat::Model(_)) => EntailmentVerdict::Neutral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn enum_cfg(max_domain: usize) -> EquivConfig {
        EquivConfig {
            engine: Engine::Enumerate,
            max_domain,
            ..EquivConfig::default()
        }
    }

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn enumeration_refutes_forall_vs_exists() {
        let verdict = check_equivalence(&f("∀x P(x)"), &f("∃x P(x)"), &enum_cfg(3)).unwrap();
        let Verdict::NotEquivalent { witness: Some(m) } = verdict else {
            panic!("expected a witness, got {verdict:?}");
        };
        assert_eq!(m.domain_size, 2);
        assert_eq!(m.predicates["P/1"].len(), 1);
    }

    #[test]
    fn enumeration_never_proves_equivalence() {
        let verdict = check_equivalence(&f("¬∀x P(x)"), &f("∃x ¬P(x)"), &enum_cfg(3)).unwrap();
        assert_eq!(
            verdict,
            Verdict::Unknown(UnknownReason::EnumerationExhausted)
        );
    }

    #[test]
    fn enumeration_establishes_neutral_entailment() {
        let verdict = check_entailment(&[f("∃x P(x)")], &f("P(a)"), &enum_cfg(2)).unwrap();
        assert_eq!(verdict, EntailmentVerdict::Neutral);
        // modus ponens cannot be proven by enumeration
        let verdict = check_entailment(
            &[f("∀x (P(x) → Q(x))"), f("P(a)")],
            &f("Q(a)"),
            &enum_cfg(2),
        )
        .unwrap();
        assert_eq!(
            verdict,
            EntailmentVerdict::Unknown(UnknownReason::EnumerationExhausted)
        );
    }

    #[test]
    fn unavailable_solver_is_unknown_not_an_error() {
        let cfg = EquivConfig {
            solver: SolverCommand::parse("/nonexistent/z3").unwrap(),
            ..EquivConfig::default()
        };
        let verdict = check_equivalence(&f("P(a)"), &f("P(a)"), &cfg).unwrap();
        assert_eq!(verdict, Verdict::Unknown(UnknownReason::SolverUnavailable));
        let hybrid = cfg.clone().with_engine(Engine::Hybrid);
        // hybrid still refutes without a solver
        let verdict = check_equivalence(&f("P(a)"), &f("¬P(a)"), &hybrid).unwrap();
        assert!(matches!(verdict, Verdict::NotEquivalent { .. }));
    }

    #[test]
    fn reject_policy_and_config_validation() {
        let open = Formula::atom("P", vec![crate::syntax::Term::var("x")]);
        let cfg = EquivConfig {
            free_var_policy: FreeVarPolicy::Reject,
            ..enum_cfg(1)
        };
        assert!(matches!(
            check_equivalence(&open, &open, &cfg),
            Err(EquivError::FreeVariables { .. })
        ));
        let bad = EquivConfig {
            max_domain: 0,
            ..enum_cfg(1)
        };
        assert!(matches!(
            check_equivalence(&f("P(a)"), &f("P(a)"), &bad),
            Err(EquivError::InvalidConfig(_))
        ));
        let bad = EquivConfig {
            timeout: Duration::ZERO,
            ..enum_cfg(1)
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn enumeration_over_budget_is_unknown() {
        let cfg = EquivConfig {
            budget: 4,
            ..enum_cfg(3)
        };
        // 3 unary predicates over a domain of 1 need 8 interpretations
        let verdict = check_equivalence(&f("P(a) ∧ Q(a)"), &f("R(a)"), &cfg).unwrap();
        assert_eq!(
            verdict,
            Verdict::Unknown(UnknownReason::EnumerationExhausted)
        );
    }
}
