use thiserror::Error;

use super::lexer::{tokenize, Token, TokenKind};
use super::{BinaryOp, Formula, Quantifier, Term};

/// Maximum nesting of prefix operators, parentheses and right-associative
/// chains accepted by [`parse`].
pub const MAX_NESTING: usize = 256;

/// Prefix that decoder models are asked to start their answer with.
const ANSWER_PREFIX: &str = "Φ=";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty formula")]
    Empty,
    #[error("unknown character {found:?} at byte {offset}")]
    UnknownToken { offset: usize, found: char },
    #[error("unexpected {found} at byte {offset}, expected {}", expected.join(" or "))]
    Unexpected {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("formula nested deeper than {MAX_NESTING} levels at byte {offset}")]
    TooDeep { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::UnknownToken { offset, .. }
            | ParseError::Unexpected { offset, .. }
            | ParseError::TooDeep { offset } => Some(*offset),
        }
    }
}

/// Parses a formula in either (or mixed) operator style. A leading `Φ=` is
/// ignored.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let trimmed = text.trim_start();
    let mut start = text.len() - trimmed.len();
    if trimmed.starts_with(ANSWER_PREFIX) {
        start += ANSWER_PREFIX.len();
    }
    let tokens = tokenize(text, start)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        scope: Vec::new(),
        depth: 0,
    };
    let formula = parser.formula()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.unexpected(&["a binary operator", "end of input"]));
    }
    Ok(formula)
}

const FORMULA_START: &[&str] = &["identifier", "'('", "'¬'", "'∀'", "'∃'"];

/// Parses the next tighter precedence level.
type Level = fn(&mut Parser) -> Result<Formula, ParseError>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    /// Variables bound by enclosing quantifiers, innermost last.
    scope: Vec<String>,
    depth: usize,
}

impl Parser {
    fn peek_kind(&self, ahead: usize) -> Option<&TokenKind> {
        self.tokens.get(self.pos + ahead).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let found = self
            .peek_kind(0)
            .map_or_else(|| "end of input".to_string(), TokenKind::describe);
        ParseError::Unexpected {
            offset: self.offset(),
            found,
            expected: expected.to_vec(),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind(0) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &'static str) -> Result<(), ParseError> {
        if self.eat(kind) {
            Ok(())
        } else {
            Err(self.unexpected(&[what]))
        }
    }

    fn ident(&mut self) -> Option<String> {
        match self.peek_kind(0) {
            Some(TokenKind::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Some(name)
            }
            _ => None,
        }
    }

    fn nest(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::TooDeep {
                offset: self.offset(),
            });
        }
        Ok(())
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.right_assoc(BinaryOp::Iff)
    }

    fn right_assoc(&mut self, op: BinaryOp) -> Result<Formula, ParseError> {
        let (token, next): (TokenKind, Level) = match op {
            BinaryOp::Iff => (TokenKind::Iff, |p| p.right_assoc(BinaryOp::Implies)),
            BinaryOp::Implies => (TokenKind::Implies, |p| p.left_assoc(BinaryOp::Xor)),
            _ => unreachable!("not right associative"),
        };
        let lhs = next(self)?;
        if !self.eat(&token) {
            return Ok(lhs);
        }
        self.nest()?;
        let rhs = self.right_assoc(op)?;
        self.depth -= 1;
        Ok(Formula::binary(op, lhs, rhs))
    }

    fn left_assoc(&mut self, op: BinaryOp) -> Result<Formula, ParseError> {
        let (token, next): (TokenKind, Level) = match op {
            BinaryOp::Xor => (TokenKind::Xor, |p| p.left_assoc(BinaryOp::Or)),
            BinaryOp::Or => (TokenKind::Or, |p| p.left_assoc(BinaryOp::And)),
            BinaryOp::And => (TokenKind::And, Self::unary),
            _ => unreachable!("not left associative"),
        };
        let mut lhs = next(self)?;
        let mut chain = 0;
        while self.eat(&token) {
            // each link deepens the left spine of the tree
            self.nest()?;
            chain += 1;
            let rhs = next(self)?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        self.depth -= chain;
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek_kind(0) {
            Some(TokenKind::Not) => {
                self.pos += 1;
                self.nest()?;
                let inner = self.unary()?;
                self.depth -= 1;
                Ok(Formula::not(inner))
            }
            Some(TokenKind::Forall) => {
                self.pos += 1;
                self.quantified(Quantifier::Forall)
            }
            Some(TokenKind::Exists) => {
                self.pos += 1;
                self.quantified(Quantifier::Exists)
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                self.nest()?;
                let inner = self.formula()?;
                self.expect(&TokenKind::RParen, "')'")?;
                self.depth -= 1;
                Ok(inner)
            }
            Some(TokenKind::Ident(_)) => self.atom(),
            _ => Err(self.unexpected(FORMULA_START)),
        }
    }

    /// True when the tokens at `pos` read `Ident ( [Ident {, Ident}] )`.
    fn atom_application_at(&self, pos: usize) -> bool {
        let kind = |i: usize| self.tokens.get(pos + i).map(|t| &t.kind);
        if !matches!(kind(0), Some(TokenKind::Ident(_))) || kind(1) != Some(&TokenKind::LParen) {
            return false;
        }
        let mut i = 2;
        if kind(i) == Some(&TokenKind::RParen) {
            return true;
        }
        loop {
            if !matches!(kind(i), Some(TokenKind::Ident(_))) {
                return false;
            }
            match kind(i + 1) {
                Some(TokenKind::Comma) => i += 2,
                Some(TokenKind::RParen) => return true,
                _ => return false,
            }
        }
    }

    fn starts_formula(kind: Option<&TokenKind>) -> bool {
        matches!(
            kind,
            Some(
                TokenKind::Ident(_)
                    | TokenKind::LParen
                    | TokenKind::Not
                    | TokenKind::Forall
                    | TokenKind::Exists
            )
        )
    }

    /// Parses `x [y z ...] body` after a quantifier symbol. Extra bare
    /// identifiers are further variables as long as a formula still follows
    /// them; `∀x y φ` becomes `∀x ∀y φ`.
    fn quantified(&mut self, q: Quantifier) -> Result<Formula, ParseError> {
        self.nest()?;
        if self.atom_application_at(self.pos) {
            return Err(self.unexpected(&["a variable"]));
        }
        let first = self
            .ident()
            .ok_or_else(|| self.unexpected(&["a variable"]))?;
        let mut vars = vec![first];
        while matches!(self.peek_kind(0), Some(TokenKind::Ident(_)))
            && !self.atom_application_at(self.pos)
            && Self::starts_formula(self.peek_kind(1))
        {
            vars.push(self.ident().expect("identifier"));
            self.nest()?;
        }
        let bound = vars.len();
        self.scope.extend(vars.iter().cloned());
        let body = self.formula();
        self.scope.truncate(self.scope.len() - bound);
        self.depth -= bound;
        let body = body?;
        Ok(vars
            .into_iter()
            .rev()
            .fold(body, |acc, v| Formula::quantified(q, v, acc)))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let predicate = self.ident().expect("caller checked identifier");
        if !self.eat(&TokenKind::LParen) {
            return Ok(Formula::atom(predicate, Vec::new()));
        }
        let mut args = Vec::new();
        if self.eat(&TokenKind::RParen) {
            return Ok(Formula::atom(predicate, args));
        }
        loop {
            let name = self.ident().ok_or_else(|| self.unexpected(&["a term"]))?;
            args.push(self.resolve(name));
            if self.eat(&TokenKind::Comma) {
                continue;
            }
            self.expect(&TokenKind::RParen, "',' or ')'")?;
            break;
        }
        Ok(Formula::atom(predicate, args))
    }

    fn resolve(&self, name: String) -> Term {
        if self.scope.contains(&name) {
            Term::Variable(name)
        } else {
            Term::Constant(name)
        }
    }
}
