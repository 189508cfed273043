use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Forall,
    Exists,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Xor,
    LParen,
    RParen,
    Comma,
    Ident(String),
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Forall => "'∀'".into(),
            TokenKind::Exists => "'∃'".into(),
            TokenKind::Not => "'¬'".into(),
            TokenKind::And => "'∧'".into(),
            TokenKind::Or => "'∨'".into(),
            TokenKind::Implies => "'→'".into(),
            TokenKind::Iff => "'↔'".into(),
            TokenKind::Xor => "'⊕'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Ident(name) => format!("identifier '{name}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset into the original input.
    pub offset: usize,
}

pub(crate) fn symbol_kind(c: char) -> Option<TokenKind> {
    Some(match c {
        '∀' => TokenKind::Forall,
        '∃' => TokenKind::Exists,
        '¬' => TokenKind::Not,
        '∧' => TokenKind::And,
        '∨' => TokenKind::Or,
        '→' => TokenKind::Implies,
        '↔' => TokenKind::Iff,
        '⊕' => TokenKind::Xor,
        '(' => TokenKind::LParen,
        ')' => TokenKind::RParen,
        ',' => TokenKind::Comma,
        _ => return None,
    })
}

/// Textual operator keywords, matched case-insensitively, with their symbols.
pub(crate) const KEYWORDS: [(&str, char); 8] = [
    ("forall", '∀'),
    ("exists", '∃'),
    ("not", '¬'),
    ("and", '∧'),
    ("or", '∨'),
    ("implies", '→'),
    ("iff", '↔'),
    ("xor", '⊕'),
];

pub(crate) fn keyword_symbol(word: &str) -> Option<char> {
    KEYWORDS
        .iter()
        .find(|(kw, _)| kw.eq_ignore_ascii_case(word))
        .map(|&(_, sym)| sym)
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text[start..]` into tokens. Offsets are relative to `text`.
pub(crate) fn tokenize(text: &str, start: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text[start..].char_indices().peekable();
    while let Some((rel, c)) = chars.next() {
        let offset = start + rel;
        if c.is_whitespace() {
            continue;
        }
        if let Some(kind) = symbol_kind(c) {
            tokens.push(Token { kind, offset });
            continue;
        }
        if is_ident_start(c) {
            let mut end = offset + c.len_utf8();
            while let Some(&(next_rel, n)) = chars.peek() {
                if !is_ident_continue(n) {
                    break;
                }
                end = start + next_rel + n.len_utf8();
                chars.next();
            }
            let word = &text[offset..end];
            let kind = match keyword_symbol(word) {
                Some(sym) => symbol_kind(sym).expect("keyword symbol"),
                None => TokenKind::Ident(word.to_string()),
            };
            tokens.push(Token { kind, offset });
            continue;
        }
        return Err(ParseError::UnknownToken { offset, found: c });
    }
    Ok(tokens)
}
