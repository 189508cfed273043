use super::lexer::keyword_symbol;
use super::{parse, BinaryOp, Formula, LexemeStyle, Quantifier};

/// Renders a formula with single spaces around binary operators and only the
/// parentheses needed to parse back to the same tree. Arity-0 atoms keep
/// their `()`.
pub fn render(f: &Formula, style: LexemeStyle) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, style);
    out
}

/// Comparison key for exact match: the symbolic rendering of the parsed
/// formula with all whitespace removed. Text that does not parse falls back
/// to itself with whitespace removed and textual operators replaced by their
/// symbols.
pub fn canonical_form(text: &str) -> String {
    match parse(text) {
        Ok(f) => strip_whitespace(&render(&f, LexemeStyle::Symbolic)),
        Err(_) => symbolize_raw(text),
    }
}

pub fn strip_whitespace(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

fn symbolize_raw(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match keyword_symbol(word) {
            Some(sym) => out.push(sym),
            None => out.push_str(word),
        }
        word.clear();
    };
    for c in text.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            word.push(c);
            continue;
        }
        flush(&mut word, &mut out);
        if !c.is_whitespace() {
            out.push(c);
        }
    }
    flush(&mut word, &mut out);
    out
}

fn binary_lexeme(op: BinaryOp, style: LexemeStyle) -> &'static str {
    match (style, op) {
        (LexemeStyle::Symbolic, BinaryOp::And) => "∧",
        (LexemeStyle::Symbolic, BinaryOp::Or) => "∨",
        (LexemeStyle::Symbolic, BinaryOp::Xor) => "⊕",
        (LexemeStyle::Symbolic, BinaryOp::Implies) => "→",
        (LexemeStyle::Symbolic, BinaryOp::Iff) => "↔",
        (LexemeStyle::Textual, BinaryOp::And) => "and",
        (LexemeStyle::Textual, BinaryOp::Or) => "or",
        (LexemeStyle::Textual, BinaryOp::Xor) => "xor",
        (LexemeStyle::Textual, BinaryOp::Implies) => "implies",
        (LexemeStyle::Textual, BinaryOp::Iff) => "iff",
    }
}

/// A quantifier swallows everything to its right, so a formula ending in
/// one must be parenthesized when it is an operand.
fn open_to_the_right(f: &Formula) -> bool {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => true,
        Formula::Not(inner) => open_to_the_right(inner),
        _ => false,
    }
}

fn write_parenthesized(out: &mut String, f: &Formula, style: LexemeStyle, wrap: bool) {
    if wrap {
        out.push('(');
        write_formula(out, f, style);
        out.push(')');
    } else {
        write_formula(out, f, style);
    }
}

fn write_formula(out: &mut String, f: &Formula, style: LexemeStyle) {
    match f {
        Formula::Atom { predicate, args } => {
            out.push_str(predicate);
            out.push('(');
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(t.name());
            }
            out.push(')');
        }
        Formula::Not(inner) => {
            out.push_str(match style {
                LexemeStyle::Symbolic => "¬",
                LexemeStyle::Textual => "not ",
            });
            write_parenthesized(out, inner, style, inner.as_binary().is_some());
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let (q, var, body) = f.as_quantifier().expect("quantifier");
            out.push_str(match (style, q) {
                (LexemeStyle::Symbolic, Quantifier::Forall) => "∀",
                (LexemeStyle::Symbolic, Quantifier::Exists) => "∃",
                (LexemeStyle::Textual, Quantifier::Forall) => "forall ",
                (LexemeStyle::Textual, Quantifier::Exists) => "exists ",
            });
            out.push_str(var);
            out.push(' ');
            write_parenthesized(out, body, style, body.as_binary().is_some());
        }
        _ => {
            let (op, lhs, rhs) = f.as_binary().expect("binary");
            let prec = op.precedence();
            let child_prec =
                |c: &Formula| c.as_binary().map_or(u8::MAX, |(o, _, _)| o.precedence());
            let (wrap_lhs, wrap_rhs) = if op.is_right_assoc() {
                (child_prec(lhs) <= prec, child_prec(rhs) < prec)
            } else {
                (child_prec(lhs) < prec, child_prec(rhs) <= prec)
            };
            write_parenthesized(out, lhs, style, wrap_lhs || open_to_the_right(lhs));
            out.push(' ');
            out.push_str(binary_lexeme(op, style));
            out.push(' ');
            write_parenthesized(out, rhs, style, wrap_rhs || open_to_the_right(rhs));
        }
    }
}
