#![allow(dead_code)]

use std::path::{Path, PathBuf};

use folcheck::equiv::{SolverAnswer, SolverCommand};
use folcheck::syntax::{BinaryOp, Formula, FormulaGenerator, Quantifier};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PINEAPPLE_PRED: &str = "∀x (Pineapple(x) → (Fruit(x) ∧ HasSpikySkin(x)))";
pub const PINEAPPLE_GOLD: &str = "∀x (Pineapple(x) → (Fruit(x) ∧ SpikySkin(x)))";
pub const TOMATO_PRED: &str =
    "∀x (Tomato(x) → (Red(x) ∧ Round(x))) ∧ ∀y (Cucumber(y) → (Green(y) ∧ Elongated(y)))";
pub const TOMATO_GOLD: &str =
    "∀x ∀y (Tomato(x) → (Red(x) ∧ Round(x))) ∧ (Cucumber(y) → (Green(y) ∧ Elongated(y)))";

/// The default solver, which these tests require.
pub fn solver() -> SolverCommand {
    let cmd = SolverCommand::from_env();
    let answer = cmd.run("(check-sat)\n", std::time::Duration::from_secs(10));
    assert_eq!(
        answer,
        SolverAnswer::Sat,
        "an SMT-LIB2 solver is required (set FOLCHECK_SOLVER or install z3)"
    );
    cmd
}

/// Negation normal form without → ⊕ ↔; equivalent to the input.
pub fn nnf(f: &Formula, negate: bool) -> Formula {
    match f {
        Formula::Atom { .. } => {
            if negate {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Not(inner) => nnf(inner, !negate),
        Formula::Forall(..) | Formula::Exists(..) => {
            let (q, var, body) = f.as_quantifier().unwrap();
            let q = match (q, negate) {
                (q, false) => q,
                (Quantifier::Forall, true) => Quantifier::Exists,
                (Quantifier::Exists, true) => Quantifier::Forall,
            };
            Formula::quantified(q, var, nnf(body, negate))
        }
        _ => {
            let (op, a, b) = f.as_binary().unwrap();
            let both = |x: Formula, y: Formula, conj: bool| {
                if conj {
                    Formula::and(x, y)
                } else {
                    Formula::or(x, y)
                }
            };
            match op {
                BinaryOp::And => both(nnf(a, negate), nnf(b, negate), !negate),
                BinaryOp::Or => both(nnf(a, negate), nnf(b, negate), negate),
                BinaryOp::Implies => both(nnf(a, !negate), nnf(b, negate), negate),
                // a ↔ b ≡ (a ∧ b) ∨ (¬a ∧ ¬b); ⊕ is its negation
                BinaryOp::Iff | BinaryOp::Xor => {
                    let neg = negate ^ (op == BinaryOp::Xor);
                    let same = Formula::or(
                        Formula::and(nnf(a, false), nnf(b, false)),
                        Formula::and(nnf(a, true), nnf(b, true)),
                    );
                    let differ = Formula::or(
                        Formula::and(nnf(a, false), nnf(b, true)),
                        Formula::and(nnf(a, true), nnf(b, false)),
                    );
                    if neg {
                        differ
                    } else {
                        same
                    }
                }
            }
        }
    }
}

pub fn named_generator(max_depth: usize) -> FormulaGenerator {
    FormulaGenerator {
        max_depth,
        predicates: vec![
            ("Student".into(), 1),
            ("Teacher".into(), 1),
            ("Likes".into(), 2),
            ("Rains".into(), 0),
        ],
        constants: vec!["alice".into(), "bob".into()],
        variables: vec!["x".into(), "y".into()],
        leaf_probability: 0.3,
    }
}

fn renamed(f: &Formula) -> Formula {
    f.rename_predicates(&|name, _| match name {
        "Student" => Some("Students".into()),
        "Teacher" => Some("Teachers".into()),
        _ => None,
    })
}

fn unrelated(f: &Formula) -> Formula {
    f.rename_predicates(&|name, _| match name {
        "Student" => Some("Pupil".into()),
        "Teacher" => Some("Mentor".into()),
        _ => None,
    })
}

/// Marks a formula so the slow test solver stalls on it.
fn slow(f: &Formula) -> Formula {
    Formula::and(Formula::prop("SlowGate"), f.clone())
}

/// 200 scoring pairs covering exact and equivalent matches, renamed
/// predicates, parse failures on either side, and solver timeouts.
pub fn adversarial_pairs() -> Vec<(String, String)> {
    use folcheck::syntax::{render, LexemeStyle::*};
    let generator = named_generator(5);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200)
        .map(|i| {
            let gold = generator.generate(&mut rng);
            let g = render(&gold, Symbolic);
            let p = match i % 20 {
                0 | 10 => g.clone(),
                1 | 11 => format!("Φ= {}", render(&gold, Textual)),
                2 | 12 => render(&renamed(&gold), Symbolic),
                3 | 13 => render(&nnf(&gold, false), Symbolic),
                4 | 14 => render(&nnf(&renamed(&gold), false), Textual),
                5 | 15 => render(&generator.generate(&mut rng), Symbolic),
                6 => format!("∀x ({}", g),
                7 => return (g.clone(), format!("{g} ∧")),
                8 => {
                    let gold = slow(&gold);
                    return (
                        render(&nnf(&gold, false), Symbolic),
                        render(&gold, Symbolic),
                    );
                }
                9 | 19 => render(&unrelated(&gold), Symbolic),
                16 => String::new(),
                17 => format!("¬({g})"),
                18 => {
                    let extra = if rng.gen_bool(0.5) {
                        "Rains"
                    } else {
                        "Teachers(bob)"
                    };
                    format!("({g}) ∧ {extra}")
                }
                _ => unreachable!(),
            };
            (p, g)
        })
        .collect()
}

/// A solver wrapper that never answers scripts mentioning `SlowGate` and
/// hands everything else to the default solver.
pub fn slow_solver_script(dir: &Path) -> PathBuf {
    let real = SolverCommand::from_env();
    let mut real_line = vec![real.program.clone()];
    real_line.extend(real.effective_args());
    let path = dir.join("slow-solver.sh");
    std::fs::write(
        &path,
        format!(
            "#!/bin/sh\nscript=$(cat)\ncase \"$script\" in\n  *SlowGate*) exec sleep 30 ;;\nesac\nprintf '%s\\n' \"$script\" | exec {}\n",
            real_line.join(" ")
        ),
    )
    .unwrap();
    path
}

pub fn write_pairs_jsonl(path: &Path, pairs: &[(String, String)]) {
    let lines: Vec<String> = pairs
        .iter()
        .map(|(p, g)| serde_json::json!({ "FOL_PRED": p, "FOL_GT": g }).to_string())
        .collect();
    std::fs::write(path, lines.join("\n") + "\n").unwrap();
}
