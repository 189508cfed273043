use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{prepare, EquivError, FreeVarPolicy};
use crate::analysis::{extract_signature, Signature};
use crate::syntax::{BinaryOp, Formula, Quantifier, Term};

/// What the emitted script asks the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Asserts `¬(φ ↔ ψ)`; `unsat` means equivalent.
    Equivalence,
    /// Asserts `φ` and `¬ψ`; `unsat` means `φ` entails `ψ`.
    Entailment,
}

/// Sort name of the (non-empty) universe.
pub const UNIVERSE: &str = "U";

/// SMT symbol for a predicate: the name with its arity appended, so
/// `P/1` and `P/2` stay apart.
pub fn predicate_symbol(name: &str, arity: usize) -> String {
    format!("{name}_{arity}")
}

// `.` cannot occur in a source identifier, so these never collide with each
// other or with predicate symbols.
fn constant_symbol(name: &str) -> String {
    format!("c.{name}")
}

fn variable_symbol(name: &str) -> String {
    format!("v.{name}")
}

/// Builds the SMT-LIB2 script for one check of `phi` against `psi`.
pub fn to_smt_script(
    phi: &Formula,
    psi: &Formula,
    mode: CheckMode,
    policy: FreeVarPolicy,
) -> Result<String, EquivError> {
    let phi = prepare(phi, policy)?;
    let psi = prepare(psi, policy)?;
    let assertions = match mode {
        CheckMode::Equivalence => vec![Formula::not(Formula::iff(phi, psi))],
        CheckMode::Entailment => vec![phi, Formula::not(psi)],
    };
    Ok(script_for_assertions(&assertions))
}

/// Script asserting every (closed) formula in `assertions` and checking
/// satisfiability of their conjunction.
pub(crate) fn script_for_assertions(assertions: &[Formula]) -> String {
    let mut signature = Signature::default();
    for a in assertions {
        signature.extend(&extract_signature(a));
    }
    let mut out = String::new();
    out.push_str("(set-logic UF)\n");
    let _ = writeln!(out, "(declare-sort {UNIVERSE} 0)");
    for (name, arity) in &signature.predicates {
        let domain = vec![UNIVERSE; *arity].join(" ");
        let _ = writeln!(
            out,
            "(declare-fun {} ({domain}) Bool)",
            predicate_symbol(name, *arity)
        );
    }
    let constants: BTreeSet<_> = signature.constants.iter().collect();
    for c in constants {
        let _ = writeln!(out, "(declare-fun {} () {UNIVERSE})", constant_symbol(c));
    }
    for a in assertions {
        out.push_str("(assert ");
        write_expr(&mut out, a);
        out.push_str(")\n");
    }
    out.push_str("(check-sat)\n");
    out
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Variable(v) => out.push_str(&variable_symbol(v)),
        Term::Constant(c) => out.push_str(&constant_symbol(c)),
    }
}

fn write_expr(out: &mut String, f: &Formula) {
    match f {
        Formula::Atom { predicate, args } => {
            let symbol = predicate_symbol(predicate, args.len());
            if args.is_empty() {
                out.push_str(&symbol);
                return;
            }
            out.push('(');
            out.push_str(&symbol);
            for t in args {
                out.push(' ');
                write_term(out, t);
            }
            out.push(')');
        }
        Formula::Not(inner) => {
            out.push_str("(not ");
            write_expr(out, inner);
            out.push(')');
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let (q, var, body) = f.as_quantifier().expect("quantifier");
            let keyword = match q {
                Quantifier::Forall => "forall",
                Quantifier::Exists => "exists",
            };
            let _ = write!(out, "({keyword} (({} {UNIVERSE})) ", variable_symbol(var));
            write_expr(out, body);
            out.push(')');
        }
        _ => {
            let (op, lhs, rhs) = f.as_binary().expect("binary");
            let head = match op {
                BinaryOp::And => "and",
                BinaryOp::Or => "or",
                BinaryOp::Xor => "xor",
                BinaryOp::Implies => "=>",
                BinaryOp::Iff => "=",
            };
            let _ = write!(out, "({head} ");
            write_expr(out, lhs);
            out.push(' ');
            write_expr(out, rhs);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn reflexivity_script() {
        let p = parse("P(a)").unwrap();
        let script = to_smt_script(
            &p,
            &p,
            CheckMode::Equivalence,
            FreeVarPolicy::UniversalClosure,
        )
        .unwrap();
        assert_eq!(
            script,
            "(set-logic UF)\n\
             (declare-sort U 0)\n\
             (declare-fun P_1 (U) Bool)\n\
             (declare-fun c.a () U)\n\
             (assert (not (= (P_1 c.a) (P_1 c.a))))\n\
             (check-sat)\n"
        );
    }

    #[test]
    fn arity_collisions_are_mangled() {
        let f = parse("∀x (P(x) ∧ P(x, x) ∧ P)").unwrap();
        let script = to_smt_script(
            &f,
            &f,
            CheckMode::Equivalence,
            FreeVarPolicy::UniversalClosure,
        )
        .unwrap();
        assert!(script.contains("(declare-fun P_0 () Bool)"));
        assert!(script.contains("(declare-fun P_1 (U) Bool)"));
        assert!(script.contains("(declare-fun P_2 (U U) Bool)"));
        assert!(script.contains("(forall ((v.x U)) (and (and (P_1 v.x) (P_2 v.x v.x)) P_0))"));
    }

    #[test]
    fn entailment_script_asserts_premise_and_negated_conclusion() {
        // maximal scope: the quantifier also covers `P(a)`
        let premise = parse("∀x (P(x) → Q(x)) ∧ P(a)").unwrap();
        let conclusion = parse("Q(a)").unwrap();
        let script = to_smt_script(
            &premise,
            &conclusion,
            CheckMode::Entailment,
            FreeVarPolicy::UniversalClosure,
        )
        .unwrap();
        assert!(script.contains(
            "(assert (forall ((v.x U)) (and (=> (P_1 v.x) (Q_1 v.x)) (P_1 c.a))))\n(assert (not (Q_1 c.a)))"
        ));
        assert!(script.ends_with("(check-sat)\n"));
    }

    #[test]
    fn free_variables_are_closed_or_rejected() {
        let f = Formula::atom("P", vec![Term::var("x")]);
        let closed = to_smt_script(
            &f,
            &f,
            CheckMode::Equivalence,
            FreeVarPolicy::UniversalClosure,
        )
        .unwrap();
        assert!(closed.contains("(forall ((v.x U)) (P_1 v.x))"));
        let err = to_smt_script(&f, &f, CheckMode::Equivalence, FreeVarPolicy::Reject).unwrap_err();
        assert_eq!(
            err,
            EquivError::FreeVariables {
                variables: vec!["x".into()]
            }
        );
    }

    #[test]
    fn xor_and_iff_heads() {
        let f = parse("A ⊕ B ↔ C").unwrap();
        let s = script_for_assertions(&[f]);
        assert!(s.contains("(assert (= (xor A_0 B_0) C_0))"));
    }
}
