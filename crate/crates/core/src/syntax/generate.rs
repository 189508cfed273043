use rand::Rng;

use super::{BinaryOp, Formula, Quantifier, Term};

/// Random well-scoped formulas for property tests and benchmarks.
///
/// Variables only occur under a quantifier binding them and constant names
/// never coincide with variable names, so every generated formula survives a
/// render/parse round trip unchanged.
#[derive(Debug, Clone)]
pub struct FormulaGenerator {
    /// Maximum depth, counting an atom as 1.
    pub max_depth: usize,
    pub predicates: Vec<(String, usize)>,
    pub constants: Vec<String>,
    pub variables: Vec<String>,
    /// Chance of stopping at an atom before the depth limit.
    pub leaf_probability: f64,
}

impl Default for FormulaGenerator {
    fn default() -> Self {
        Self {
            max_depth: 8,
            predicates: vec![
                ("P".into(), 1),
                ("Q".into(), 2),
                ("R".into(), 0),
                ("Student".into(), 1),
                ("Likes".into(), 2),
            ],
            constants: vec!["a".into(), "b".into(), "john".into()],
            variables: vec!["x".into(), "y".into(), "z".into()],
            leaf_probability: 0.25,
        }
    }
}

impl FormulaGenerator {
    /// Small signature used for solver cross-checks: at most three
    /// predicates of arity at most two.
    pub fn small(max_depth: usize) -> Self {
        Self {
            max_depth,
            predicates: vec![("P".into(), 1), ("Q".into(), 2), ("R".into(), 0)],
            constants: vec!["a".into(), "b".into()],
            variables: vec!["x".into(), "y".into()],
            leaf_probability: 0.3,
        }
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        assert!(self.max_depth >= 1, "max_depth must be at least 1");
        assert!(!self.predicates.is_empty(), "need at least one predicate");
        let mut bound = Vec::new();
        self.node(rng, self.max_depth, &mut bound)
    }

    fn node<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize, bound: &mut Vec<String>) -> Formula {
        if depth == 1 || rng.gen_bool(self.leaf_probability) {
            return self.atom(rng, bound);
        }
        let can_quantify = !self.variables.is_empty();
        match rng.gen_range(0..8) {
            0 => Formula::not(self.node(rng, depth - 1, bound)),
            1 | 2 if can_quantify => {
                let q = if rng.gen_bool(0.5) {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                let var = self.variables[rng.gen_range(0..self.variables.len())].clone();
                bound.push(var.clone());
                let body = self.node(rng, depth - 1, bound);
                bound.pop();
                Formula::quantified(q, var, body)
            }
            _ => {
                let op = [
                    BinaryOp::And,
                    BinaryOp::Or,
                    BinaryOp::Xor,
                    BinaryOp::Implies,
                    BinaryOp::Iff,
                ][rng.gen_range(0..5)];
                let lhs = self.node(rng, depth - 1, bound);
                let rhs = self.node(rng, depth - 1, bound);
                Formula::binary(op, lhs, rhs)
            }
        }
    }

    fn atom<R: Rng + ?Sized>(&self, rng: &mut R, bound: &[String]) -> Formula {
        let (name, arity) = &self.predicates[rng.gen_range(0..self.predicates.len())];
        let args = (0..*arity)
            .map(|_| {
                let use_var = !bound.is_empty() && (self.constants.is_empty() || rng.gen_bool(0.7));
                if use_var {
                    Term::var(bound[rng.gen_range(0..bound.len())].clone())
                } else if self.constants.is_empty() {
                    // no constants and nothing bound: fall back to a fresh constant
                    Term::constant("c")
                } else {
                    Term::constant(self.constants[rng.gen_range(0..self.constants.len())].clone())
                }
            })
            .collect();
        Formula::atom(name.clone(), args)
    }
}
