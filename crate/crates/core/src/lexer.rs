//! Tokenizer shared by the presentation text form and the script language.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

// Positions are provenance, not structure: two nodes parsed from different
// layouts of the same program compare equal.
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}
impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(i64),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Colon,
    Star,
    Caret,
    Minus,
    Plus,
    Dot,
    Eq,
    EqEq,
    Arrow,
    Newline,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Int(v) => write!(f, "integer {v}"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Semicolon => f.write_str("`;`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::Eq => f.write_str("`=`"),
            TokenKind::EqEq => f.write_str("`==`"),
            TokenKind::Arrow => f.write_str("`->`"),
            TokenKind::Newline => f.write_str("end of line"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {message}{}", expected_suffix(.expected))]
pub struct SyntaxError {
    pub span: Span,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(" or "))
    }
}

impl SyntaxError {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        SyntaxError { span, message: message.into(), expected: Vec::new() }
    }

    pub fn expected(span: Span, found: &TokenKind, expected: &[&str]) -> Self {
        SyntaxError {
            span,
            message: format!("unexpected {found}"),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. Newlines are significant only outside of
/// brackets, so literals may span several lines.
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut depth: Vec<(char, Span)> = Vec::new();

    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let mut advance = 1;
        let kind = match c {
            '\n' => {
                let tok = depth.is_empty().then_some(TokenKind::Newline);
                i += 1;
                line += 1;
                col = 1;
                if let Some(kind) = tok {
                    if !matches!(out.last(), Some(Token { kind: TokenKind::Newline, .. }) | None) {
                        out.push(Token { kind, span });
                    }
                }
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i + advance < chars.len() && chars[i + advance] != '\n' {
                    advance += 1;
                }
                None
            }
            '{' | '(' | '[' => {
                depth.push((c, span));
                Some(match c {
                    '{' => TokenKind::LBrace,
                    '(' => TokenKind::LParen,
                    _ => TokenKind::LBracket,
                })
            }
            '}' | ')' | ']' => {
                let want = match c {
                    '}' => '{',
                    ')' => '(',
                    _ => '[',
                };
                match depth.pop() {
                    Some((open, _)) if open == want => {}
                    Some((open, ospan)) => {
                        return Err(SyntaxError::new(
                            span,
                            format!("`{c}` does not match `{open}` opened at {ospan}"),
                        ))
                    }
                    None => return Err(SyntaxError::new(span, format!("unbalanced `{c}`"))),
                }
                Some(match c {
                    '}' => TokenKind::RBrace,
                    ')' => TokenKind::RParen,
                    _ => TokenKind::RBracket,
                })
            }
            ',' => Some(TokenKind::Comma),
            ';' => Some(TokenKind::Semicolon),
            ':' => Some(TokenKind::Colon),
            '*' => Some(TokenKind::Star),
            '^' => Some(TokenKind::Caret),
            '+' => Some(TokenKind::Plus),
            '.' => Some(TokenKind::Dot),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    advance = 2;
                    Some(TokenKind::Arrow)
                } else {
                    Some(TokenKind::Minus)
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    advance = 2;
                    Some(TokenKind::EqEq)
                } else {
                    Some(TokenKind::Eq)
                }
            }
            '"' => {
                let mut s = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => {
                            return Err(SyntaxError::new(span, "unterminated string literal"))
                        }
                        Some('"') => break,
                        Some('\\') => {
                            match chars.get(j + 1) {
                                Some('n') => s.push('\n'),
                                Some(&e @ ('"' | '\\')) => s.push(e),
                                _ => {
                                    return Err(SyntaxError::new(
                                        Span { line, col: col + (j - i) },
                                        "invalid escape in string literal",
                                    ))
                                }
                            }
                            j += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            j += 1;
                        }
                    }
                }
                advance = j + 1 - i;
                Some(TokenKind::Str(s))
            }
            c if c.is_ascii_digit() => {
                while i + advance < chars.len() && chars[i + advance].is_ascii_digit() {
                    advance += 1;
                }
                let text: String = chars[i..i + advance].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| SyntaxError::new(span, "integer literal out of range"))?;
                Some(TokenKind::Int(v))
            }
            c if is_ident_start(c) => {
                while i + advance < chars.len() && is_ident_continue(chars[i + advance]) {
                    advance += 1;
                }
                Some(TokenKind::Ident(chars[i..i + advance].iter().collect()))
            }
            other => return Err(SyntaxError::new(span, format!("unexpected character {other:?}"))),
        };
        if let Some(kind) = kind {
            out.push(Token { kind, span });
        }
        i += advance;
        col += advance;
    }
    if let Some((open, ospan)) = depth.pop() {
        return Err(SyntaxError::new(ospan, format!("unclosed `{open}`")));
    }
    out.push(Token { kind: TokenKind::Eof, span: Span { line, col } });
    Ok(out)
}

/// Cursor over a token slice with one-token lookahead.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub fn peek(&self) -> &'a Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    pub fn peek_kind(&self) -> &'a TokenKind {
        &self.peek().kind
    }

    pub fn peek_nth(&self, n: usize) -> &'a TokenKind {
        &self.tokens[(self.pos + n).min(self.tokens.len() - 1)].kind
    }

    pub fn bump(&mut self) -> &'a Token {
        let t = self.peek();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Span, SyntaxError> {
        let t = self.peek();
        if t.kind == kind {
            self.bump();
            Ok(t.span)
        } else {
            Err(SyntaxError::expected(t.span, &t.kind, &[what]))
        }
    }

    pub fn expect_ident(&mut self) -> Result<(String, Span), SyntaxError> {
        let t = self.peek();
        match &t.kind {
            TokenKind::Ident(s) => {
                self.bump();
                Ok((s.clone(), t.span))
            }
            other => Err(SyntaxError::expected(t.span, other, &["identifier"])),
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<Span, SyntaxError> {
        let t = self.peek();
        match &t.kind {
            TokenKind::Ident(s) if s == kw => {
                self.bump();
                Ok(t.span)
            }
            other => Err(SyntaxError::expected(t.span, other, &[&format!("`{kw}`")])),
        }
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek_kind(), TokenKind::Ident(s) if s == kw)
    }

    pub fn skip_newlines(&mut self) {
        while self.eat(&TokenKind::Newline) {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn newlines_inside_brackets_are_dropped() {
        let k = kinds("let G = presentation {\n gens: a;\n rels: a^3;\n}\nassert x");
        assert_eq!(k.iter().filter(|k| **k == TokenKind::Newline).count(), 1);
    }

    #[test]
    fn primes_in_identifiers_and_arrows() {
        assert_eq!(
            kinds("g1' -> 1 # trailing"),
            vec![TokenKind::Ident("g1'".into()), TokenKind::Arrow, TokenKind::Int(1), TokenKind::Eof]
        );
    }

    #[test]
    fn unbalanced_brace_reports_position() {
        let err = tokenize("let G = presentation { gens: a;\nrels: a^3;").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (1, 22));
        let err = tokenize("a)\n").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (1, 2));
    }
}
